"""Arithmetic in the small fields used throughout: GF(8) and GF(9) as lookup tables."""

import numpy as np

from grscount import GF, roots_of_quadratic

F8 = GF(8)  # x^3 + x + 1 over GF(2); elements are coefficient vectors packed as integers
print(F8)
print("modulus (low degree first):", F8.modulus)

# the add and mul tables are plain numpy arrays
print("GF(8) multiplication table:")
print(F8.mul_t)

# every nonzero element has an inverse
inverses = [F8.inv(a) for a in F8.nonzero]
print("inverses:", inverses)
assert all(F8.mul(a, b) == 1 for a, b in zip(F8.nonzero, inverses))

# Frobenius x -> x^2 is additive in characteristic 2
a, b = 3, 6
print(f"({a}+{b})^2 = {F8.pow(F8.add(a, b), 2)} = {a}^2 + {b}^2 = {F8.add(F8.pow(a, 2), F8.pow(b, 2))}")

# GF(9) = GF(3)[x]/(x^2+1): the element 3 is the class of x, so 3^2 = -1
F9 = GF(9)
print("in GF(9), x*x =", F9.mul(3, 3), "and -1 =", F9.neg(1))

# roots of x^2 + x + 1 exist exactly when q is 1 mod 3, or q is a power of 3
for q in (4, 5, 7, 8, 9, 13):
    F = GF(q)
    print(f"q={q:2d}: roots of x^2+x+1 ->", roots_of_quadratic(F, 1, 1, 1))

# vectorised arithmetic via table lookups
x = np.arange(8)
print("x * 5 in GF(8):", F8.mul_t[x, 5])

"""Counting GRS codes by grouping parametrisations: the group G acts freely on S_{k,n}."""

from grscount import GF
from grscount import census, formulas
from grscount.nrcauto import Mobius, group_order_G, rho

F = GF(5)
k, n = 2, 4

# S_{k,n}: all ordered choices of n distinct points of the projective line and nonzero multipliers
size = formulas.s_kn_size(k, n, F.q)
print(f"|S_(2,4)| over GF(5) = {size}")

# each code is hit by exactly |G| = (q-1) |PGL(2,q)| parametrisations
print("|G| =", group_order_G(F.q))

keys, sizes = census.orbit_classes(F, k, n)
print(f"{len(keys)} codes, class sizes {sorted(set(sizes.tolist()))}")
print("closed formula:", formulas.gamma_grs(k, n, F.q))

# a Mobius map acts on the Vandermonde rows by a k x k matrix
g = Mobius(1, 2, 3, 4)
print("rho(g) for k=3:")
print(rho(F, g, 3))

# the same count for every k at fixed n
for kk in (2, 3):
    print(f"k={kk}, n=5:", census.enumerate_grs(F, kk, 5)[0], "=", formulas.gamma_grs(kk, 5, F.q))

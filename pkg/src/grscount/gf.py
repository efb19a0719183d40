"""Table-driven arithmetic in small finite fields GF(p^e).

Elements are plain integers in ``range(q)``.  An element with index
``sum(c_i * p**i)`` stands for the polynomial ``sum(c_i * x**i)`` reduced
modulo the field's fixed irreducible polynomial, so the representation
(and therefore every canonical form built on top of it) is reproducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_ORDER = 256

# Moduli as coefficient tuples, lowest degree first.
FIXED_MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),        # x^2 + x + 1
    8: (1, 1, 0, 1),     # x^3 + x + 1
    9: (1, 0, 1),        # x^2 + 1
    16: (1, 1, 0, 0, 1),  # x^4 + x + 1
}


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class Unsupported(FieldError):
    pass


class NoFixedModulus(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return (p, e) with q == p**e, or raise NotPrime."""
    for p in range(2, q + 1):
        if q % p == 0:
            e, m = 0, q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise NotPrime(f"{q} is not a prime power")
            return p, e
    raise NotPrime(f"{q} is not a prime power")


# --- polynomials over GF(p), coefficient lists lowest degree first ---------

def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return a[:dm] + [0] * (dm - len(a[:dm]))


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= e/2."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] % p == 0:
        return False
    for deg in range(1, e // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            divisor = tuple(low) + (1,)
            if not any(_poly_mod(list(modulus), divisor, p)):
                return False
    return True


def find_irreducible(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e in index order of its low coefficients."""
    for low in itertools.product(range(p), repeat=e):
        cand = tuple(reversed(low)) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {e} over GF({p})")


class FieldSpec:
    """The finite field GF(p^e) with precomputed operation tables.

    Instances are immutable after construction.  Scalar operations go through
    Python lists (fast for single elements); the numpy tables ``add_t``,
    ``mul_t``, ``neg_t``, ``inv_t`` serve vectorised code.  ``inv_t[0]`` is 0
    and must never be relied upon.
    """

    def __init__(self, p: int, e: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if e < 1:
            raise Unsupported(f"extension degree must be positive, got {e}")
        q = p**e
        if q > MAX_ORDER:
            raise Unsupported(f"q = {q} exceeds {MAX_ORDER}")
        if modulus is None:
            if e == 1:
                modulus = (0, 1)
            elif q in FIXED_MODULI:
                modulus = FIXED_MODULI[q]
            else:
                raise NoFixedModulus(f"no fixed modulus for GF({q}); pass one explicitly")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != e + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {e}")
        if e > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")

        self.p, self.e, self.q, self.modulus = p, e, q, modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, e, q = self.p, self.e, self.q
        digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        # a * x^i as digit vectors, then a*b = sum_i b_i (a x^i) over GF(p).
        shifts = np.zeros((q, e, e), dtype=np.int64)
        cur = digits.copy()
        for i in range(e):
            shifts[:, i, :] = cur
            if e == 1:
                break
            top = cur[:, -1].copy()
            cur = np.concatenate([np.zeros((q, 1), dtype=np.int64), cur[:, :-1]], axis=1)
            cur = (cur - top[:, None] * np.array(self.modulus[:e], dtype=np.int64)) % p
        mul = (np.einsum("bi,aij->abj", digits, shifts) % p) @ weights

        dtype = np.uint8 if q <= 256 else np.uint16
        self.add_t = add.astype(dtype)
        self.mul_t = mul.astype(dtype)
        self.neg_t = neg.astype(dtype)
        self.sub_t = self.add_t[:, self.neg_t]
        inv = np.zeros(q, dtype=dtype)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        self.inv_t = inv
        for t in (self.add_t, self.mul_t, self.neg_t, self.sub_t, self.inv_t):
            t.setflags(write=False)

        self._add = self.add_t.tolist()
        self._mul = self.mul_t.tolist()
        self._sub = self.sub_t.tolist()
        self._neg = self.neg_t.tolist()
        self._inv = self.inv_t.tolist()

        self.generator = next(g for g in range(1, q) if self._order(g) == q - 1)
        self.exp_table = [1] * (q - 1)
        for i in range(1, q - 1):
            self.exp_table[i] = self._mul[self.exp_table[i - 1]][self.generator]
        self.log_table = [0] * q
        for i, v in enumerate(self.exp_table):
            self.log_table[v] = i

    def _order(self, a: int) -> int:
        x, n = a, 1
        while x != 1:
            x = self._mul[x][a]
            n += 1
        return n

    # --- scalar arithmetic ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._sub[a][b]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 0
        return self.exp_table[(self.log_table[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def sum(self, values) -> int:
        s = 0
        for v in values:
            s = self._add[s][v]
        return s

    def prod(self, values) -> int:
        s = 1
        for v in values:
            s = self._mul[s][v]
        return s

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.e, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (FieldSpec, (self.p, self.e, self.modulus))


def field_new(p: int, e: int = 1, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    return FieldSpec(p, e, modulus)


@lru_cache(maxsize=None)
def GF(q: int) -> FieldSpec:
    """Cached field of order q; uses the fixed modulus when one is defined,
    otherwise the first irreducible polynomial found by :func:`find_irreducible`."""
    p, e = factor_prime_power(q)
    if q > MAX_ORDER:
        raise Unsupported(f"q = {q} exceeds {MAX_ORDER}")
    modulus = None
    if e > 1 and q not in FIXED_MODULI:
        modulus = find_irreducible(p, e)
    return FieldSpec(p, e, modulus)


def roots_of_quadratic(F: FieldSpec, a: int, b: int, c: int) -> list[int]:
    """All x in F with a x^2 + b x + c = 0, by scanning the field."""
    if a == b == c == 0:
        raise ValueError("the zero polynomial has every element as a root")
    mul, add = F._mul, F._add
    return [x for x in range(F.q) if add[add[mul[a][mul[x][x]]][mul[b][x]]][c] == 0]

"""Symmetric-power images of PGL(2,q) acting on the normal rational curve.

A 2x2 matrix g = (alpha beta; gamma delta) acts on P^1 by
t -> (gamma + delta t) / (alpha + beta t).  :func:`rho_prime` gives the
k x k matrix that induces the same motion on the curve
t -> [1, t, ..., t^(k-1)].
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

import numpy as np

from .geom import INF, normalize, nrc_point, p1_points
from .gf import FieldSpec
from .grscore import GrsParams, grs_generator
from .linalg import matmul


class SingularG(ValueError):
    pass


@dataclass(frozen=True)
class Mobius:
    alpha: int
    beta: int
    gamma: int
    delta: int

    def det(self, F: FieldSpec) -> int:
        return F.sub(F.mul(self.alpha, self.delta), F.mul(self.beta, self.gamma))

    def check(self, F: FieldSpec) -> None:
        if self.det(F) == 0:
            raise SingularG(f"{self} is singular over GF({F.q})")

    def act(self, F: FieldSpec, t):
        if t is INF:
            return INF if self.beta == 0 else F.div(self.delta, self.beta)
        den = F.add(self.alpha, F.mul(self.beta, t))
        num = F.add(self.gamma, F.mul(self.delta, t))
        return INF if den == 0 else F.div(num, den)

    def compose(self, F: FieldSpec, other: "Mobius") -> "Mobius":
        """Matrix product self @ other."""
        a, b, c, d = self.alpha, self.beta, self.gamma, self.delta
        e, f, g, h = other.alpha, other.beta, other.gamma, other.delta
        m, s = F.mul, F.add
        return Mobius(s(m(a, e), m(b, g)), s(m(a, f), m(b, h)), s(m(c, e), m(d, g)), s(m(c, f), m(d, h)))

    def matrix(self) -> np.ndarray:
        return np.array([[self.alpha, self.beta], [self.gamma, self.delta]], dtype=np.uint8)


@dataclass(frozen=True)
class RhoImage:
    k: int
    m: tuple[tuple[int, ...], ...]  # scalar-normalised: first nonzero entry is 1

    def matrix(self) -> np.ndarray:
        return np.array(self.m, dtype=np.uint8)


def _poly_mul(F: FieldSpec, a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def _binary_form_power(F: FieldSpec, u: tuple[int, int], v: tuple[int, int], i: int, k: int) -> list[int]:
    """Coefficients of (u0 e + u1 f)^(k-1-i) (v0 e + v1 f)^i on e^(k-1-j) f^j, j = 0..k-1.

    Expanded by repeated multiplication in the field, so binomial
    coefficients come out reduced mod p.
    """
    out = [1]
    for _ in range(k - 1 - i):
        out = _poly_mul(F, out, list(u))
    for _ in range(i):
        out = _poly_mul(F, out, list(v))
    return out


def rho(F: FieldSpec, g: Mobius, k: int) -> np.ndarray:
    """Matrix of the (k-1)-th symmetric power of g on the basis e^(k-1-j) f^j."""
    g.check(F)
    ge = (g.alpha, g.gamma)  # g e
    gf = (g.beta, g.delta)   # g f
    cols = [_binary_form_power(F, ge, gf, i, k) for i in range(k)]
    return np.array(cols, dtype=np.uint8).T.copy()


def rho_prime_matrix(F: FieldSpec, g: Mobius, k: int) -> np.ndarray:
    """rho(g^T)^T, unnormalised."""
    gt = Mobius(g.alpha, g.gamma, g.beta, g.delta)
    return rho(F, gt, k).T.copy()


def rho_prime(F: FieldSpec, g: Mobius, k: int) -> RhoImage:
    m = rho_prime_matrix(F, g, k)
    flat = normalize(F, m.ravel())
    return RhoImage(k, tuple(tuple(flat[i * k:(i + 1) * k]) for i in range(k)))


def projectively_equal(F: FieldSpec, a, b) -> bool:
    return normalize(F, np.asarray(a).ravel()) == normalize(F, np.asarray(b).ravel())


def check_equivariance(F: FieldSpec, g: Mobius, k: int, t) -> bool:
    m = rho_prime_matrix(F, g, k)
    col = np.array(nrc_point(F, k, t), dtype=np.uint8)[:, None]
    image = matmul(F, m, col)[:, 0]
    return normalize(F, image) == nrc_point(F, k, g.act(F, t))


def gl2(F: FieldSpec):
    for a, b, c, d in itertools.product(range(F.q), repeat=4):
        g = Mobius(a, b, c, d)
        if g.det(F):
            yield g


def pgl2(F: FieldSpec):
    """One representative per class of PGL(2,q): first nonzero entry equal to 1."""
    for g in gl2(F):
        first = next(x for x in (g.alpha, g.beta, g.gamma, g.delta) if x)
        if first == 1:
            yield g


def random_mobius(F: FieldSpec, rng: random.Random) -> Mobius:
    while True:
        g = Mobius(*(rng.randrange(F.q) for _ in range(4)))
        if g.det(F):
            return g


def group_order_G(q: int) -> int:
    """|PGL(2,q)| * |GF(q)^x|."""
    return (q + 1) * q * (q - 1) ** 2


def is_scalar(m: np.ndarray) -> bool:
    m = np.asarray(m)
    return m[0, 0] != 0 and np.array_equal(m, m[0, 0] * np.eye(m.shape[0], dtype=m.dtype))


def group_G(F: FieldSpec, k: int) -> list[np.ndarray]:
    """All lambda * rho'(g): the preimage of rho'(PGL(2,q)) in GL(k,q); q <= 9."""
    if F.q > 9:
        raise ValueError("group materialisation is limited to q <= 9")
    out = []
    for g in pgl2(F):
        m = rho_prime_matrix(F, g, k)
        for lam in F.nonzero:
            out.append(F.mul_t[lam, m])
    return out


def permutes_nrc(F: FieldSpec, m: np.ndarray, k: int) -> bool:
    curve = {nrc_point(F, k, t) for t in p1_points(F)}
    pts = np.array(sorted(curve), dtype=np.uint8).T
    image = matmul(F, m, pts)
    return {normalize(F, image[:, i]) for i in range(image.shape[1])} == curve


def stabilizer_is_trivial(F: FieldSpec, p: GrsParams, samples: int = 2000, seed: int = 0) -> bool:
    """True iff no non-identity element of the group fixes G_k(t, d) exactly.

    Exhaustive over every lift lambda * rho'(g) when q <= 9, otherwise over
    ``samples`` random g (all lambda for each).
    """
    if p.n < 3:
        raise ValueError("stabilizer check needs n >= 3")
    G = grs_generator(F, p)
    k = p.k
    if F.q <= 9:
        reps = pgl2(F)
    else:
        rng = random.Random(seed)
        reps = (random_mobius(F, rng) for _ in range(samples))
    eye = np.eye(k, dtype=np.uint8)
    for g in reps:
        m = rho_prime_matrix(F, g, k)
        for lam in F.nonzero:
            R = F.mul_t[lam, m]
            if np.array_equal(R, eye):
                continue
            if np.array_equal(matmul(F, R, G), G):
                return False
    return True

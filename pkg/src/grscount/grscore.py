"""Construction and recognition of generalized Reed-Solomon codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import geom
from .geom import INF, normalize, nrc_point
from .gf import FieldSpec
from .linalg import CodeKey, code_key, inverse, is_mds, matmul, rank, rref


class GrsError(ValueError):
    pass


class DuplicateEvalPoint(GrsError):
    pass


class ZeroMultiplier(GrsError):
    pass


class NotGeneralPosition(GrsError):
    pass


class DimensionDrop(GrsError):
    pass


class NotMds(GrsError):
    pass


class TooShort(GrsError):
    pass


@dataclass(frozen=True)
class GrsParams:
    """Dimension k, evaluation points t (field elements or INF) and column multipliers d."""

    k: int
    t: tuple
    d: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.t)

    def validate(self, F: FieldSpec) -> None:
        if len(self.t) != len(self.d):
            raise GrsError("t and d differ in length")
        if len(set(self.t)) != len(self.t):
            raise DuplicateEvalPoint(f"repeated evaluation point in {self.t}")
        if any(x == 0 for x in self.d):
            raise ZeroMultiplier("column multipliers must be nonzero")
        if self.n > F.q + 1:
            raise GrsError(f"n={self.n} exceeds q+1={F.q + 1}")
        if not 1 <= self.k <= self.n:
            raise GrsError(f"bad dimension k={self.k} for n={self.n}")
        for x in self.t:
            if x is not INF and not 0 <= x < F.q:
                raise GrsError(f"{x} is not an element of GF({F.q})")


def _column(F: FieldSpec, k: int, t) -> list[int]:
    if t is INF:
        return [0] * (k - 1) + [1]
    return [F.pow(t, i) for i in range(k)]


def grs_generator(F: FieldSpec, p: GrsParams) -> np.ndarray:
    p.validate(F)
    cols = [[F.mul(d, x) for x in _column(F, p.k, t)] for t, d in zip(p.t, p.d)]
    return np.array(cols, dtype=np.uint8).T.copy()


def dual_multipliers(F: FieldSpec, p: GrsParams) -> tuple[int, ...]:
    """Multipliers delta with G_{n-k}(t, delta) spanning the null space of G_k(t, d)."""
    p.validate(F)
    finite = [i for i, t in enumerate(p.t) if t is not INF]
    if len(finite) < 2:
        raise GrsError("need at least two finite evaluation points")
    delta = [0] * p.n
    for i in finite:
        prod = 1
        for j in finite:
            if j != i:
                prod = F.mul(prod, F.sub(p.t[i], p.t[j]))
        delta[i] = F.inv(F.mul(p.d[i], prod))
    # the INF position depends on all finite deltas, so it goes last
    for i in range(p.n):
        if p.t[i] is INF:
            s = F.sum(F.mul(F.pow(p.t[j], p.n - 2), F.mul(p.d[j], delta[j])) for j in finite)
            delta[i] = F.neg(F.mul(F.inv(p.d[i]), s))
    return tuple(delta)


def dual_params(F: FieldSpec, p: GrsParams) -> GrsParams:
    return GrsParams(p.n - p.k, p.t, dual_multipliers(F, p))


def _in_general_position(F: FieldSpec, cols: np.ndarray) -> bool:
    k = cols.shape[0]
    return all(rank(F, cols[:, list(s)]) == k for s in itertools.combinations(range(cols.shape[1]), k))


def fit_nrc(F: FieldSpec, points) -> tuple[np.ndarray, GrsParams]:
    """Fit the normal rational curve through k+2 points of P^{k-1} in general position.

    Returns (R, params) such that column i of R @ grs_generator(params) is a
    nonzero multiple of points[i].
    """
    P = np.array([list(p) for p in points], dtype=np.uint8).T
    k, m = P.shape
    if m != k + 2:
        raise GrsError(f"need k+2 = {k + 2} points, got {m}")
    if k < 2 or not _in_general_position(F, P):
        raise NotGeneralPosition("some k of the points lie on a hyperplane")
    M = P[:, :k]
    G = matmul(F, inverse(F, M), P)  # [I_k | v w]
    v, w = G[:, k].tolist(), G[:, k + 1].tolist()
    # column i of G_2(t, d) is (-v_i, -w_i) = -v_i * (1, w_i / v_i)
    t = tuple(F.div(wi, vi) for vi, wi in zip(v, w)) + (0, INF)
    d = tuple(F.neg(vi) for vi in v) + (1, 1)
    delta = dual_multipliers(F, GrsParams(2, t, d))
    params = GrsParams(k, t, delta)
    Gk = grs_generator(F, params)
    R = matmul(F, M, inverse(F, Gk[:, :k]))
    return R, params


def nrc_point_set(F: FieldSpec, R: np.ndarray, k: int) -> frozenset:
    """Points of the curve R(C_k)."""
    out = set()
    for t in geom.p1_points(F):
        col = np.array(nrc_point(F, k, t), dtype=np.uint8)[:, None]
        out.add(normalize(F, matmul(F, R, col)[:, 0]))
    return frozenset(out)


@dataclass(frozen=True)
class HyperconicParams:
    base: GrsParams
    nucleus_position: int
    nucleus_multiplier: int


def hyperconic_generator(F: FieldSpec, h: HyperconicParams) -> np.ndarray:
    """3 x (q+2) generator: a full conic's columns plus its nucleus inserted."""
    if F.p != 2:
        raise geom.OddCharacteristic(f"GF({F.q}) has odd characteristic")
    base = h.base
    if base.k != 3 or base.n != F.q + 1:
        raise GrsError("hyperconic base must be a [q+1, 3] GRS code")
    if not 0 <= h.nucleus_position <= base.n:
        raise GrsError("nucleus position out of range")
    if h.nucleus_multiplier == 0:
        raise ZeroMultiplier("nucleus multiplier must be nonzero")
    G = grs_generator(F, base)
    conic = geom.conic_through(F, [G[:, i] for i in range(base.n)])
    nuc = geom.nucleus(F, conic)
    col = np.array([F.mul(h.nucleus_multiplier, x) for x in nuc], dtype=np.uint8)
    return np.insert(G, h.nucleus_position, col, axis=1)


def puncture_positions(F: FieldSpec, key: CodeKey, positions) -> CodeKey:
    """Delete the given coordinates; raises DimensionDrop if the rank falls."""
    drop = set(positions)
    keep = [i for i in range(key.n) if i not in drop]
    G = key.matrix()[:, keep]
    r, rk = rref(F, G)
    if rk < key.k:
        raise DimensionDrop(f"punctured code has dimension {rk} < {key.k}")
    return CodeKey(key.k, len(keep), r.tobytes())


def puncture(F: FieldSpec, key: CodeKey, r: int) -> CodeKey:
    """Delete the last r coordinates."""
    if r < 0 or key.n - r < key.k:
        raise GrsError(f"cannot puncture an [{key.n},{key.k}] code by {r}")
    return puncture_positions(F, key, range(key.n - r, key.n))


def column_points(F: FieldSpec, key: CodeKey) -> list[tuple[int, ...]]:
    G = key.matrix()
    return [normalize(F, G[:, i]) for i in range(key.n)]


def is_grs_dim3(F: FieldSpec, key: CodeKey) -> bool:
    """Whether an MDS [n,3] code is GRS: its columns lie on a nondegenerate
    conic, or (n = q+2) form a conic plus its nucleus.  Every [5,3] MDS code
    passes, since five points in general position always lie on a conic."""
    if key.k != 3:
        raise GrsError("is_grs_dim3 needs k = 3")
    if key.n < 5:
        raise TooShort("GRS recognition needs n >= 5")
    if not is_mds(F, key.matrix()):
        raise NotMds("code is not MDS")
    pts = column_points(F, key)
    if key.n == F.q + 2:
        return geom.is_hyperconic(F, pts)
    return geom.conic_through(F, pts) is not None


def is_grs(F: FieldSpec, key: CodeKey) -> bool:
    """Whether an MDS code of length n <= q+1 has its columns on one NRC
    (dimension 3 additionally accepts the hyperconic case)."""
    k, n = key.k, key.n
    if not is_mds(F, key.matrix()):
        raise NotMds("code is not MDS")
    if k == 3:
        return is_grs_dim3(F, key)
    if k <= 1 or k >= n - 1:
        return True
    if n > F.q + 1:
        return False
    pts = column_points(F, key)
    R, _ = fit_nrc(F, pts[: k + 2])
    curve = nrc_point_set(F, R, k)
    return all(p in curve for p in pts[k + 2:])


def grs_key(F: FieldSpec, p: GrsParams) -> CodeKey:
    return code_key(F, grs_generator(F, p))

"""Projective geometry over GF(q).

Points of P^1 are field elements plus the sentinel :data:`INF`.  Points of
P^{k-1} are tuples normalised so the first nonzero coordinate is 1, which
makes equality a plain tuple comparison.  :class:`Plane` indexes PG(2,q)
and stores every line as an int bitmask; the arc searches run on it.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .gf import GF, FieldSpec
from .linalg import det, null_space_basis, rank


class GeometryError(ValueError):
    pass


class BadDimension(GeometryError):
    pass


class DegeneratePosition(GeometryError):
    pass


class RankDeficient(GeometryError):
    pass


class OddCharacteristic(GeometryError):
    pass


class Degenerate(GeometryError):
    pass


class TooLarge(GeometryError):
    pass


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def p1_points(F: FieldSpec) -> list:
    """P^1 in the fixed order 0, 1, ..., q-1, INF."""
    return list(range(F.q)) + [INF]


def normalize(F: FieldSpec, v) -> tuple[int, ...]:
    v = [int(x) for x in v]
    lead = next((x for x in v if x), None)
    if lead is None:
        raise GeometryError("the zero vector is not a projective point")
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in v)


def proj_points(F: FieldSpec, dim: int) -> list[tuple[int, ...]]:
    """All points of P^{dim-1}, grouped by leading position, then lexicographic."""
    pts = []
    for lead in range(dim):
        for tail in itertools.product(range(F.q), repeat=dim - lead - 1):
            pts.append((0,) * lead + (1,) + tail)
    return pts


def nrc_point(F: FieldSpec, k: int, t) -> tuple[int, ...]:
    if not 2 <= k <= F.q:
        raise BadDimension(f"need 2 <= k <= q, got k={k}, q={F.q}")
    if t is INF:
        return (0,) * (k - 1) + (1,)
    return tuple(F.pow(t, i) for i in range(k))


def collinear(F: FieldSpec, p1, p2, p3) -> bool:
    return det(F, np.array([p1, p2, p3], dtype=np.uint8)) == 0


def is_arc(F: FieldSpec, pts) -> bool:
    pts = list(pts)
    if len(set(map(tuple, pts))) != len(pts):
        return False
    return not any(collinear(F, *c) for c in itertools.combinations(pts, 3))


# --- conics ---------------------------------------------------------------


def _monomials(F: FieldSpec, pt) -> list[int]:
    x, y, z = pt
    m = F.mul
    return [m(x, x), m(y, y), m(z, z), m(x, y), m(y, z), m(x, z)]


def conic_value(F: FieldSpec, coeffs, pt) -> int:
    """Evaluate a x^2 + b y^2 + c z^2 + d xy + e yz + f xz at pt."""
    return F.sum(F.mul(c, m) for c, m in zip(coeffs, _monomials(F, pt)))


def _conic_point_set(F: FieldSpec, coeffs) -> list[tuple[int, ...]]:
    return [p for p in proj_points(F, 3) if conic_value(F, coeffs, p) == 0]


def _is_degenerate(F: FieldSpec, coeffs) -> bool:
    # Degenerate conics are a line pair (2q+1 points), a double line (q+1
    # collinear points) or a conjugate pair (one point); only a nondegenerate
    # conic has q+1 points not all on one line.
    pts = _conic_point_set(F, coeffs)
    if len(pts) != F.q + 1:
        return True
    return all(collinear(F, pts[0], pts[1], p) for p in pts[2:])


@dataclass(frozen=True)
class Conic:
    """a x^2 + b y^2 + c z^2 + d xy + e yz + f xz, first nonzero coefficient 1."""

    coeffs: tuple[int, int, int, int, int, int]
    degenerate: bool

    def contains(self, F: FieldSpec, pt) -> bool:
        return conic_value(F, self.coeffs, pt) == 0

    def points(self, F: FieldSpec) -> list[tuple[int, ...]]:
        return _conic_point_set(F, self.coeffs)


def make_conic(F: FieldSpec, coeffs) -> Conic:
    coeffs = normalize(F, coeffs)
    return Conic(coeffs, _is_degenerate(F, coeffs))


def conic_through_five(F: FieldSpec, points) -> Conic:
    """The unique conic through five points, no three of them collinear."""
    pts = [normalize(F, p) for p in points]
    if len(pts) != 5:
        raise ValueError("need exactly five points")
    if len(set(pts)) < 5 or any(collinear(F, *c) for c in itertools.combinations(pts, 3)):
        raise DegeneratePosition("three of the five points are collinear")
    system = np.array([_monomials(F, p) for p in pts], dtype=np.uint8)
    if rank(F, system) != 5:
        raise RankDeficient("five points in general position gave a rank-deficient system")
    (sol,) = null_space_basis(F, system)
    conic = make_conic(F, sol)
    if conic.degenerate:
        raise RankDeficient("conic through five points in general position is degenerate")
    return conic


def all_conics(F: FieldSpec) -> list[Conic]:
    """Every nondegenerate conic of PG(2,q), by exhaustive scan; q <= 4 only."""
    if F.q > 4:
        raise TooLarge("conic scan is limited to q <= 4")
    out = []
    for coeffs in proj_points(F, 6):
        if not _is_degenerate(F, coeffs):
            out.append(Conic(coeffs, False))
    return out


def tangent_line(F: FieldSpec, conic: Conic, pt) -> tuple[int, ...]:
    """Gradient of the quadratic form at pt, as line coordinates."""
    a, b, c, d, e, f = conic.coeffs
    x, y, z = pt
    m, s = F.mul, F.sum
    two = F.from_int(2)
    gx = s([m(two, m(a, x)), m(d, y), m(f, z)])
    gy = s([m(two, m(b, y)), m(d, x), m(e, z)])
    gz = s([m(two, m(c, z)), m(e, y), m(f, x)])
    return normalize(F, (gx, gy, gz))


def nucleus(F: FieldSpec, conic: Conic) -> tuple[int, ...]:
    """The common point of all tangent lines (characteristic 2)."""
    if F.p != 2:
        raise OddCharacteristic(f"GF({F.q}) has odd characteristic")
    if conic.degenerate:
        raise Degenerate("degenerate conic has no nucleus")
    a, b, c, d, e, f = conic.coeffs
    return normalize(F, (e, f, d))


def conic_through(F: FieldSpec, points) -> Conic | None:
    """A nondegenerate conic containing all the points, or None.

    With five or more points the first five must be in general position and
    fix the conic.  Fewer points fall back to a full scan (small q only) and
    return the first conic in scan order.
    """
    pts = [normalize(F, p) for p in points]
    if len(pts) >= 5:
        try:
            conic = conic_through_five(F, pts[:5])
        except DegeneratePosition:
            return None
        return conic if all(conic.contains(F, p) for p in pts[5:]) else None
    for conic in all_conics(F):
        if all(conic.contains(F, p) for p in pts):
            return conic
    return None


def is_hyperconic(F: FieldSpec, points) -> bool:
    """True iff the q+2 points are a nondegenerate conic plus its nucleus."""
    pts = [normalize(F, p) for p in points]
    if F.p != 2 or len(pts) != F.q + 2 or len(set(pts)) != len(pts):
        return False
    for j, cand in enumerate(pts):
        rest = pts[:j] + pts[j + 1:]
        if len(rest) >= 5:
            conics = [conic_through(F, rest)]
        else:
            conics = [c for c in all_conics(F) if all(c.contains(F, p) for p in rest)]
        for conic in conics:
            if conic is not None and nucleus(F, conic) == cand:
                return True
    return False


# --- bitmask plane ------------------------------------------------------------


class Plane:
    """PG(2,q) with points indexed in :func:`proj_points` order and lines as bitmasks."""

    def __init__(self, F: FieldSpec):
        self.F = F
        self.points = proj_points(F, 3)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.size = len(self.points)
        self.full = (1 << self.size) - 1
        pts = np.array(self.points, dtype=np.uint8)
        self.lines: list[int] = []
        self.line_of: dict[tuple[int, ...], int] = {}
        for coords in self.points:
            prods = F.mul_t[np.array(coords, dtype=np.uint8)[None, :], pts]
            vals = F.add_t[F.add_t[prods[:, 0], prods[:, 1]], prods[:, 2]]
            mask = 0
            for i in np.nonzero(vals == 0)[0]:
                mask |= 1 << int(i)
            self.line_of[coords] = len(self.lines)
            self.lines.append(mask)
        # join[i][j]: bitmask of the line through points i and j
        self.join = [[0] * self.size for _ in range(self.size)]
        for mask in self.lines:
            members = self.members(mask)
            for i in members:
                row = self.join[i]
                for j in members:
                    row[j] = mask

    def members(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def mask_of(self, pts) -> int:
        mask = 0
        for p in pts:
            mask |= 1 << self.index[normalize(self.F, p)]
        return mask

    def blocked_by(self, chosen: list[int]) -> int:
        """Points on some line joining two chosen points (chosen included)."""
        mask = 0
        for a, b in itertools.combinations(chosen, 2):
            mask |= self.join[a][b]
        for a in chosen:
            mask |= 1 << a
        return mask

    def conic_mask(self, conic: Conic) -> int:
        return self.mask_of(conic.points(self.F))


@lru_cache(maxsize=None)
def plane(q: int) -> Plane:
    return Plane(GF(q))


FRAME = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]


class HyperovalCensus(NamedTuple):
    count: int
    all_hyperconic: bool
    through_frame: int
    ordered_frames: int


def _extend_arcs(P: Plane, chosen: list[int], avail: int, need: int, min_index: int, out: list):
    if need == 0:
        out.append(list(chosen))
        return
    cand = avail >> min_index << min_index
    while cand:
        low = cand & -cand
        i = low.bit_length() - 1
        cand ^= low
        new_block = 1 << i
        for c in chosen:
            new_block |= P.join[c][i]
        chosen.append(i)
        _extend_arcs(P, chosen, avail & ~new_block, need - 1, i + 1, out)
        chosen.pop()


def _hyperovals_from(q: int, first: int) -> tuple[int, bool]:
    P = plane(q)
    chosen = [P.index[p] for p in FRAME]
    avail = P.full & ~P.blocked_by(chosen)
    if first >= 0:
        if not avail >> first & 1:
            return 0, True
        block = 1 << first
        for c in chosen:
            block |= P.join[c][first]
        chosen.append(first)
        avail &= ~block
        need, start = q + 2 - 5, first + 1
    else:
        need, start = q + 2 - 4, 0
    found: list = []
    _extend_arcs(P, chosen, avail, need, start, found)
    ok = all(is_hyperconic(P.F, [P.points[i] for i in arc]) for arc in found)
    return len(found), ok


def count_ordered_frames(F: FieldSpec) -> int:
    """Ordered 4-tuples of points of PG(2,q), no three collinear, by enumeration."""
    P = plane(F.q)
    total = 0
    for a in range(P.size):
        for b in range(P.size):
            if b == a:
                continue
            avail_c = P.full & ~P.join[a][b]
            for c in P.members(avail_c):
                avail_d = avail_c & ~P.join[a][c] & ~P.join[b][c]
                total += bin(avail_d).count("1")
    return total


def hyperoval_census(F: FieldSpec, workers: int = 1) -> HyperovalCensus:
    """Count all hyperovals of PG(2,q), q in {2,4,8}, and test each for being a hyperconic.

    Only hyperovals through the standard frame are searched; the total is
    recovered as (frames x hyperovals through a frame) / (ordered 4-subsets of
    one hyperoval), using that PGL(3,q) acts regularly on ordered frames.
    """
    if F.p != 2:
        raise OddCharacteristic(f"GF({F.q}) has odd characteristic")
    if F.q >= 16:
        raise TooLarge("hyperoval search is limited to q <= 8")
    q = F.q
    P = plane(q)
    if q + 2 == 4:
        parts = [_hyperovals_from(q, -1)]
    else:
        firsts = list(range(P.size))
        if workers > 1:
            with ProcessPoolExecutor(workers) as ex:
                parts = list(ex.map(_hyperovals_from, [q] * len(firsts), firsts))
        else:
            parts = [_hyperovals_from(q, f) for f in firsts]
    # each hyperoval through the frame is found once per choice of its smallest extra point
    through = sum(c for c, _ in parts)
    all_ok = all(ok for _, ok in parts)
    frames = count_ordered_frames(F)
    per_hyperoval = (q + 2) * (q + 1) * q * (q - 1)
    total, rem = divmod(frames * through, per_hyperoval)
    if rem:
        raise ArithmeticError("hyperoval count is not an integer; search is inconsistent")
    return HyperovalCensus(total, all_ok, through, frames)

"""Dense exact linear algebra over GF(q).

Matrices are numpy ``uint8`` arrays of field-element indices; every routine
takes the :class:`~grscount.gf.FieldSpec` explicitly.  The batched routines
(``rref_batch``, ``pack_keys``) act on stacks of shape ``(B, rows, cols)``
and are what the enumeration engines run on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import FieldSpec


class NotFullRank(ValueError):
    pass


def as_matrix(F: FieldSpec, rows) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("expected a 2-d array")
    if m.size and (m.min() < 0 or m.max() >= F.q):
        raise ValueError(f"entries must lie in [0, {F.q})")
    return m.astype(np.uint8)


def matmul(F: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.uint8)
    b = np.asarray(b, dtype=np.uint8)
    if a.shape[-1] != b.shape[-2]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    prods = F.mul_t[a[..., :, :, None], b[..., None, :, :]]
    out = prods[..., 0, :]
    for j in range(1, a.shape[-1]):
        out = F.add_t[out, prods[..., j, :]]
    return out.astype(np.uint8)


def rref(F: FieldSpec, m: np.ndarray) -> tuple[np.ndarray, int]:
    """Reduced row echelon form and rank."""
    a = np.array(m, dtype=np.uint8).tolist()
    rows = len(a)
    cols = len(a[0]) if rows else 0
    mul, sub, inv = F._mul, F._sub, F._inv
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv[a[r][c]]
        a[r] = [mul[s][x] for x in a[r]]
        for i in range(rows):
            f = a[i][c]
            if i != r and f:
                a[i] = [sub[x][mul[f][y]] for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return np.array(a, dtype=np.uint8).reshape(rows, cols), r


def rank(F: FieldSpec, m: np.ndarray) -> int:
    return rref(F, m)[1]


def det(F: FieldSpec, m: np.ndarray) -> int:
    a = np.array(m, dtype=np.uint8).tolist()
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    mul, sub, inv = F._mul, F._sub, F._inv
    d = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = F.neg(d)
        d = mul[d][a[c][c]]
        s = inv[a[c][c]]
        for i in range(c + 1, n):
            f = mul[a[i][c]][s]
            if f:
                a[i] = [sub[x][mul[f][y]] for x, y in zip(a[i], a[c])]
    return d


def inverse(F: FieldSpec, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=np.uint8)
    n = m.shape[0]
    aug = np.concatenate([m, np.eye(n, dtype=np.uint8)], axis=1)
    r, rk = rref(F, aug)
    if rk < n or not np.array_equal(r[:, :n], np.eye(n, dtype=np.uint8)):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def is_mds(F: FieldSpec, g: np.ndarray) -> bool:
    """True iff every maximal minor of the full-row-rank matrix g is nonzero."""
    g = np.asarray(g, dtype=np.uint8)
    k, n = g.shape
    if k > n or rank(F, g) < k:
        raise NotFullRank(f"{k}x{n} generator matrix is not of rank {k}")
    for cols in itertools.combinations(range(n), k):
        if det(F, g[:, cols]) == 0:
            return False
    return True


def null_space_basis(F: FieldSpec, g: np.ndarray) -> np.ndarray:
    """Rows spanning {x : g x^T = 0}; g must have full row rank."""
    g = np.asarray(g, dtype=np.uint8)
    k, n = g.shape
    r, rk = rref(F, g)
    if rk < k:
        raise NotFullRank(f"{k}x{n} matrix has rank {rk}")
    pivots = [int(np.nonzero(r[i])[0][0]) for i in range(k)]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    for j, fcol in enumerate(free):
        basis[j, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[j, pc] = F.neg(int(r[i, fcol]))
    return basis


@dataclass(frozen=True)
class CodeKey:
    """Canonical identity of a linear code: its generator matrix in RREF."""

    k: int
    n: int
    canonical_bytes: bytes

    def matrix(self) -> np.ndarray:
        return np.frombuffer(self.canonical_bytes, dtype=np.uint8).reshape(self.k, self.n).copy()

    def is_systematic(self) -> bool:
        return np.array_equal(self.matrix()[:, : self.k], np.eye(self.k, dtype=np.uint8))


def code_key(F: FieldSpec, g: np.ndarray) -> CodeKey:
    g = np.asarray(g, dtype=np.uint8)
    k, n = g.shape
    r, rk = rref(F, g)
    if rk < k:
        raise NotFullRank(f"{k}x{n} generator matrix has rank {rk}")
    return CodeKey(k, n, r.tobytes())


# --- batched routines ---------------------------------------------------


def rref_batch(F: FieldSpec, m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-reduce every matrix of a (B, k, n) stack; returns (rref, ranks)."""
    a = np.array(m, dtype=np.uint8, copy=True)
    B, k, n = a.shape
    ranks = np.zeros(B, dtype=np.int64)
    idx = np.arange(B)
    rows = np.arange(k)
    mul, sub, inv = F.mul_t, F.sub_t, F.inv_t
    for c in range(n):
        live = ranks < k
        if not live.any():
            break
        col = a[:, :, c]
        cand = (col != 0) & (rows[None, :] >= ranks[:, None]) & live[:, None]
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = slice(None) if has.all() else idx[has]
        r = ranks[b]
        piv = cand[b].argmax(axis=1)
        sel = np.arange(len(r))
        sub_a = a[b]
        pivrow = sub_a[sel, piv].copy()
        sub_a[sel, piv] = sub_a[sel, r]
        pivrow = mul[inv[pivrow[:, c]][:, None], pivrow]
        sub_a[sel, r] = pivrow
        factors = sub_a[:, :, c].copy()
        factors[sel, r] = 0
        a[b] = sub[sub_a, mul[factors[:, :, None], pivrow[:, None, :]]]
        ranks[has] += 1
    return a, ranks


def pack_keys(F: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Encode each matrix of a (B, k, n) stack as an exact key.

    Uses a base-q int64 when q**(k*n) fits, otherwise a fixed-width bytes
    view.  Either way equal keys mean byte-equal matrices.
    """
    B = m.shape[0]
    flat = m.reshape(B, -1)
    if F.q ** flat.shape[1] < 2**63:
        out = np.zeros(B, dtype=np.int64)
        for j in range(flat.shape[1]):
            out = out * F.q + flat[:, j]
        return out
    flat = np.ascontiguousarray(flat, dtype=np.uint8)
    return flat.view(np.dtype((np.void, flat.shape[1]))).ravel()


def unpack_key(F: FieldSpec, key, k: int, n: int) -> np.ndarray:
    if isinstance(key, (bytes, np.void)):
        return np.frombuffer(bytes(key), dtype=np.uint8).reshape(k, n).copy()
    key = int(key)
    digits = []
    for _ in range(k * n):
        key, d = divmod(key, F.q)
        digits.append(d)
    return np.array(digits[::-1], dtype=np.uint8).reshape(k, n)

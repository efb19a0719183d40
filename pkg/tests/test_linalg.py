import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grscount.geom import INF
from grscount.gf import GF
from grscount.grscore import GrsParams, grs_generator
from grscount.linalg import (NotFullRank, as_matrix, code_key, det, inverse, is_mds, matmul,
                             null_space_basis, pack_keys, rank, rref, rref_batch, unpack_key)


def random_matrix(F, rng, k, n):
    return rng.integers(0, F.q, size=(k, n)).astype(np.uint8)


def random_invertible(F, rng, k):
    while True:
        m = random_matrix(F, rng, k, k)
        if rank(F, m) == k:
            return m


def row_space(F, g):
    """All codewords, by brute force over every coefficient vector."""
    k, n = g.shape
    words = set()
    for c in itertools.product(range(F.q), repeat=k):
        words.add(tuple(matmul(F, np.array([c], dtype=np.uint8), g)[0]))
    return frozenset(words)


def det_leibniz(F, m):
    n = m.shape[0]
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = F.prod(int(m[i, perm[i]]) for i in range(n))
        total = F.sub(total, term) if inversions % 2 else F.add(total, term)
    return total


def test_rref_examples():
    F = GF(5)
    eye = np.eye(3, dtype=np.uint8)
    r, rk = rref(F, eye)
    assert rk == 3 and np.array_equal(r, eye)
    m = as_matrix(F, [[2, 4, 1, 3], [4, 3, 2, 1]])  # second row is 2 * first
    r, rk = rref(F, m)
    assert rk == 1
    assert r[0].tolist() == [1, 2, 3, 4] and not r[1].any()


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_rref_idempotent_and_rank(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for _ in range(60):
        k, n = rng.integers(1, 5), rng.integers(1, 7)
        m = random_matrix(F, rng, k, n)
        r, rk = rref(F, m)
        r2, rk2 = rref(F, r)
        assert np.array_equal(r, r2) and rk == rk2
        assert rk == rank(F, m.T.copy())


@pytest.mark.parametrize("q", [2, 3, 4])
def test_code_key_iff_same_row_space(q):
    F = GF(q)
    rng = np.random.default_rng(10 + q)
    mats = []
    while len(mats) < 25:
        m = random_matrix(F, rng, 2, 4)
        if rank(F, m) == 2:
            mats.append(m)
    for a, b in itertools.combinations(mats, 2):
        assert (code_key(F, a) == code_key(F, b)) == (row_space(F, a) == row_space(F, b))


@pytest.mark.parametrize("q", [5, 7, 8, 9])
def test_code_key_invariant_under_row_operations(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for _ in range(100):
        g = random_invertible(F, rng, 3)
        g = np.concatenate([g, random_matrix(F, rng, 3, 4)], axis=1)
        R = random_invertible(F, rng, 3)
        assert code_key(F, matmul(F, R, g)) == code_key(F, g)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_det_against_leibniz(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for size in (1, 2, 3, 4):
        for _ in range(20):
            m = random_matrix(F, rng, size, size)
            assert det(F, m) == det_leibniz(F, m)


@pytest.mark.parametrize("q", [3, 4, 7, 8])
def test_inverse(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for _ in range(30):
        m = random_invertible(F, rng, 4)
        assert np.array_equal(matmul(F, m, inverse(F, m)), np.eye(4, dtype=np.uint8))
    with pytest.raises(ZeroDivisionError):
        inverse(F, np.zeros((2, 2), dtype=np.uint8))


def test_is_mds_examples():
    F5 = GF(5)
    g = grs_generator(F5, GrsParams(3, (0, 1, 2, 3, 4, INF), (1,) * 6))
    assert is_mds(F5, g)
    assert not is_mds(F5, as_matrix(F5, [[1, 0, 1], [0, 1, 0]]))
    F7 = GF(7)
    assert not is_mds(F7, np.concatenate([np.eye(3, dtype=np.uint8), np.ones((3, 3), np.uint8)], axis=1))
    with pytest.raises(NotFullRank):
        is_mds(F7, as_matrix(F7, [[1, 2, 3], [2, 4, 6]]))


def test_null_space_examples():
    F = GF(7)
    B = as_matrix(F, [[1, 2, 3], [4, 5, 6]])
    g = np.concatenate([np.eye(2, dtype=np.uint8), B], axis=1)
    h = null_space_basis(F, g)
    want = np.concatenate([F.neg_t[B.T], np.eye(3, dtype=np.uint8)], axis=1)
    assert code_key(F, h) == code_key(F, want)
    with pytest.raises(NotFullRank):
        null_space_basis(F, as_matrix(F, [[1, 1], [2, 2]]))


def test_null_space_of_frame_matrix():
    # G = [I_k | v w] is orthogonal to the rows [-v^T 1 0] and [-w^T 0 1]
    F = GF(7)
    v, w = [1, 2, 3], [4, 5, 1]
    G = np.concatenate([np.eye(3, dtype=np.uint8), np.array([v, w], dtype=np.uint8).T], axis=1)
    H = as_matrix(F, [[F.neg(x) for x in v] + [1, 0], [F.neg(x) for x in w] + [0, 1]])
    assert not matmul(F, G, H.T.copy()).any()


@pytest.mark.parametrize("q", [2, 4, 8, 9])
def test_null_space_random(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    for _ in range(30):
        g = random_matrix(F, rng, 3, 6)
        if rank(F, g) < 3:
            continue
        h = null_space_basis(F, g)
        assert h.shape == (3, 6) and rank(F, h) == 3
        assert not matmul(F, g, h.T.copy()).any()


@pytest.mark.parametrize("q", [5, 7, 8])
def test_mds_duality(q):
    F = GF(q)
    rng = np.random.default_rng(q)
    pts = list(range(q)) + [INF]
    for _ in range(20):
        n = int(rng.integers(4, q + 2))
        k = int(rng.integers(1, n))
        t = tuple(pts[i] for i in rng.permutation(q + 1)[:n])
        d = tuple(int(x) for x in rng.integers(1, q, size=n))
        g = grs_generator(F, GrsParams(k, t, d))
        assert is_mds(F, g) and is_mds(F, null_space_basis(F, g))
        # a non-MDS code has a non-MDS dual
        bad = g.copy()
        bad[:, 1] = bad[:, 0]
        if rank(F, bad) == k and 2 <= k < n - 1:
            assert not is_mds(F, bad) and not is_mds(F, null_space_basis(F, bad))


def test_systematic_key_for_mds():
    F = GF(5)
    key = code_key(F, grs_generator(F, GrsParams(3, (0, 1, 2, 3, 4, INF), (1, 2, 3, 4, 1, 2))))
    assert key.is_systematic()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16]), st.integers(1, 4), st.integers(1, 7), st.integers(0, 2**32))
def test_rref_batch_matches_scalar(q, k, n, seed):
    F = GF(q)
    rng = np.random.default_rng(seed)
    stack = rng.integers(0, q, size=(12, k, n)).astype(np.uint8)
    stack[0, :, :] = 0
    R, ranks = rref_batch(F, stack)
    for i in range(stack.shape[0]):
        r, rk = rref(F, stack[i])
        assert rk == ranks[i] and np.array_equal(r, R[i])


@pytest.mark.parametrize("q", [5, 16, 256])
def test_pack_roundtrip(q):
    F = GF(q)
    rng = np.random.default_rng(0)
    stack = rng.integers(0, q, size=(20, 3, 9)).astype(np.uint8)
    keys = pack_keys(F, stack)
    for i in range(20):
        assert np.array_equal(unpack_key(F, keys[i], 3, 9), stack[i])
    assert len(set(keys.tolist())) == len({m.tobytes() for m in stack})

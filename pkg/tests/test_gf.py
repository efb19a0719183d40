import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grscount.gf import (GF, FieldError, FieldSpec, NoFixedModulus, NotPrime, Unsupported,
                         factor_prime_power, field_new, is_irreducible, roots_of_quadratic)

SMALL_Q = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coefficient lists (lowest degree first), reduced mod the modulus."""
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    e = len(modulus) - 1
    for deg in range(len(out) - 1, e - 1, -1):
        c = out[deg]
        if c:
            for i, m in enumerate(modulus):
                out[deg - e + i] = (out[deg - e + i] - c * m) % p
    return (out + [0] * e)[:e]


def digits(x, p, e):
    return [(x // p**i) % p for i in range(e)]


def undigits(ds, p):
    return sum(c * p**i for i, c in enumerate(ds))


@pytest.mark.parametrize("q", SMALL_Q)
def test_field_axioms_exhaustive(q):
    F = GF(q)
    els = list(F.elements)
    for x, y in itertools.product(els, repeat=2):
        assert F.mul(x, y) == F.mul(y, x)
        assert F.add(x, y) == F.add(y, x)
        assert F.sub(F.add(x, y), y) == x
    for x in F.nonzero:
        assert F.mul(x, F.inv(x)) == 1
    for x in els:
        assert F.add(x, F.neg(x)) == 0
        assert F.mul(x, 1) == x and F.add(x, 0) == x


@pytest.mark.parametrize("q", SMALL_Q)
def test_distributivity_exhaustive(q):
    F = GF(q)
    a = np.arange(q)
    lhs = F.mul_t[a[:, None, None], F.add_t[a[None, :, None], a[None, None, :]]]
    rhs = F.add_t[F.mul_t[a[:, None, None], a[None, :, None]], F.mul_t[a[:, None, None], a[None, None, :]]]
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("q", SMALL_Q)
def test_associativity_exhaustive(q):
    F = GF(q)
    a = np.arange(q)
    m = F.mul_t
    assert np.array_equal(m[m[a[:, None, None], a[None, :, None]], a[None, None, :]],
                          m[a[:, None, None], m[a[None, :, None], a[None, None, :]]])


@pytest.mark.parametrize("q", SMALL_Q)
def test_fermat_and_frobenius(q):
    F = GF(q)
    for x in F.elements:
        assert F.pow(x, q) == x
    frob = [F.pow(x, F.p) for x in F.elements]
    assert sorted(frob) == list(F.elements)
    for x, y in itertools.product(F.elements, repeat=2):
        assert F.pow(F.add(x, y), F.p) == F.add(frob[x], frob[y])


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27])
def test_tables_match_polynomial_arithmetic(q):
    F = GF(q)
    for x, y in itertools.product(F.elements, repeat=2):
        want = undigits(poly_mulmod(digits(x, F.p, F.e), digits(y, F.p, F.e), F.modulus, F.p), F.p)
        assert F.mul(x, y) == want
        assert F.add(x, y) == undigits([(a + b) % F.p for a, b in
                                        zip(digits(x, F.p, F.e), digits(y, F.p, F.e))], F.p)


def test_fixed_moduli():
    assert GF(4).modulus == (1, 1, 1)
    assert GF(8).modulus == (1, 1, 0, 1)
    assert GF(9).modulus == (1, 0, 1)
    assert GF(16).modulus == (1, 1, 0, 0, 1)


def test_examples():
    F4 = field_new(2, 2)
    assert F4.q == 4 and F4.modulus == (1, 1, 1)
    assert field_new(5, 1).mul(2, 3) == 1
    F8 = field_new(2, 3)
    x, x2 = 2, 4
    assert F8.mul(x, x2) == 3  # x^3 = x + 1


def test_table_determinism():
    for p, e in [(2, 3), (3, 2), (2, 4), (7, 1)]:
        a, b = field_new(p, e), field_new(p, e)
        for name in ("add_t", "mul_t", "inv_t", "neg_t"):
            assert getattr(a, name).tobytes() == getattr(b, name).tobytes()
        assert a == b and hash(a) == hash(b)


def test_tables_read_only():
    with pytest.raises(ValueError):
        GF(5).mul_t[1, 1] = 0


def test_errors():
    with pytest.raises(NotPrime):
        field_new(6, 1)
    with pytest.raises(Unsupported):
        field_new(2, 9)
    with pytest.raises(Unsupported):
        field_new(257, 1)
    with pytest.raises(NoFixedModulus):
        field_new(5, 2)
    with pytest.raises(FieldError):
        field_new(2, 2, (1, 0, 1))  # x^2 + 1 = (x + 1)^2 over GF(2)
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)


def test_explicit_modulus():
    F = field_new(5, 2, (2, 0, 1))  # x^2 + 2 has no root mod 5
    assert F.q == 25
    for x in F.nonzero:
        assert F.mul(x, F.inv(x)) == 1


def test_is_irreducible_against_root_scan():
    for p in (2, 3, 5):
        for c0, c1 in itertools.product(range(p), repeat=2):
            has_root = any((c0 + c1 * x + x * x) % p == 0 for x in range(p))
            assert is_irreducible((c0, c1, 1), p) == (not has_root)


def test_factor_prime_power():
    assert factor_prime_power(64) == (2, 6)
    assert factor_prime_power(81) == (3, 4)
    with pytest.raises(NotPrime):
        factor_prime_power(12)


def test_roots_examples():
    assert roots_of_quadratic(GF(5), 1, 1, 1) == []
    assert roots_of_quadratic(GF(7), 1, 1, 1) == [2, 4]
    assert roots_of_quadratic(GF(9), 1, 1, 1) == [1]
    with pytest.raises(ValueError):
        roots_of_quadratic(GF(5), 0, 0, 0)


@pytest.mark.parametrize("q", SMALL_Q)
def test_generator_and_logs(q):
    F = GF(q)
    powers = {F.pow(F.generator, i) for i in range(q - 1)}
    assert powers == set(F.nonzero)
    for x in F.nonzero:
        assert F.exp_table[F.log_table[x]] == x


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SMALL_Q + [25, 27, 32, 49, 64, 81, 121, 125, 128]), st.data())
def test_division_roundtrip(q, data):
    F = GF(q)
    a = data.draw(st.integers(0, q - 1))
    b = data.draw(st.integers(1, q - 1))
    assert F.mul(F.div(a, b), b) == a
    n = data.draw(st.integers(0, 3 * q))
    assert F.pow(a, n) == F.prod([a] * n)


def test_pickle_roundtrip():
    import pickle
    F = GF(16)
    G = pickle.loads(pickle.dumps(F))
    assert G == F and np.array_equal(G.mul_t, F.mul_t)


def test_prime_fields_are_residues():
    F = GF(11)
    for x, y in itertools.product(range(11), repeat=2):
        assert F.mul(x, y) == x * y % 11
        assert F.add(x, y) == (x + y) % 11
    assert isinstance(F, FieldSpec)

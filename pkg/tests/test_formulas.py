import json
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grscount import formulas
from grscount.formulas import (TABLE1, AsymptoticSpec, NotPowerOfTwo, OutOfRange, QPolynomial,
                               UnsupportedLength, a_fn, b_fn, c_fn, check_asymptotic_grs,
                               check_asymptotic_mds3, d_fn, e_fn, gamma_grs, gamma_grs_hyper,
                               gamma_mds3, grs_expansion, hyperconic_count, mds3_polynomial_part,
                               s_kn_size)
from grscount.nrcauto import group_order_G

PRIME_POWERS = [4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]

q = QPolynomial.q()


def test_qpolynomial_arithmetic():
    p = (q - 1) ** 3 * (q - 2)
    assert p == QPolynomial([2, -7, 9, -5, 1])
    assert p.degree == 4 and p.coefficient(4) == 1 and p.coefficient(9) == 0
    assert (p - p) == QPolynomial() and QPolynomial().degree == -1
    assert (3 - q)(5) == -2 and (q * Fraction(1, 2))(3) == Fraction(3, 2)
    assert p.evaluate_int(7) == 6**3 * 5
    with pytest.raises(ValueError):
        (q * Fraction(1, 2)).evaluate_int(3)


@given(st.lists(st.integers(-50, 50), max_size=6), st.lists(st.integers(-50, 50), max_size=6),
       st.integers(-20, 20))
def test_qpolynomial_is_a_ring_map(a, b, x):
    A, B = QPolynomial(a), QPolynomial(b)
    assert (A + B)(x) == A(x) + B(x)
    assert (A * B)(x) == A(x) * B(x)
    assert (A - B)(x) == A(x) - B(x)


def test_gamma_grs_examples():
    assert gamma_grs(3, 6, 5) == 6144
    assert gamma_grs(3, 7, 7) == 5598720
    assert gamma_grs(2, 5, 7) == 25920 == 6**4 * 5 * 4
    with pytest.raises(OutOfRange):
        gamma_grs(3, 4, 5)
    with pytest.raises(OutOfRange):
        gamma_grs(2, 7, 5)


@pytest.mark.parametrize("qq", PRIME_POWERS)
def test_gamma_grs_independent_of_k(qq):
    for n in range(4, qq + 2):
        values = {gamma_grs(k, n, qq) for k in range(2, n - 1)}
        assert len(values) == 1


def test_gamma_grs_hyper_examples():
    assert gamma_grs_hyper(8) == 290545970400
    assert gamma_grs_hyper(4) == 486
    big = gamma_grs_hyper(16)
    assert big == 18 * 15**17 * factorial(14)
    assert big > 2**64
    assert int(json.loads(json.dumps(str(big)))) == big
    with pytest.raises(NotPowerOfTwo):
        gamma_grs_hyper(9)
    with pytest.raises(OutOfRange):
        gamma_grs_hyper(2)


def gl3_order(qq):
    return (qq**3 - 1) * (qq**3 - qq) * (qq**3 - qq**2)


def test_hyperconic_count():
    assert hyperconic_count(2) == 7
    assert hyperconic_count(4) == 168
    assert hyperconic_count(8) == 32704
    with pytest.raises(NotPowerOfTwo):
        hyperconic_count(6)


@pytest.mark.parametrize("qq", [4, 8, 16, 32])
def test_hyperconic_codes_from_point_sets(qq):
    # GL(3,q) acts freely on generator matrices, so codes = ordered scaled column tuples / |GL(3,q)|
    tuples = hyperconic_count(qq) * factorial(qq + 2) * (qq - 1) ** (qq + 2)
    assert tuples % gl3_order(qq) == 0
    assert tuples // gl3_order(qq) == gamma_grs_hyper(qq)


def test_gamma_mds3_examples():
    assert gamma_mds3(6, 7) == 1088640
    assert gamma_mds3(7, 8) == 141178800
    assert gamma_mds3(9, 9) == 84557168640
    with pytest.raises(UnsupportedLength):
        gamma_mds3(10, 9)


def test_helper_functions():
    # a: q even; b: roots of x^2+x+1; c: q a power of 3; d: roots of x^2+x-1; e: roots of x^2+1
    assert [a_fn(x) for x in (4, 5, 8, 9)] == [1, 0, 1, 0]
    assert [b_fn(x) for x in (4, 5, 7, 8, 9, 13)] == [2, 0, 2, 0, 1, 2]
    assert [c_fn(x) for x in (3, 9, 27, 7)] == [1, 1, 1, 0]
    assert [d_fn(x) for x in (4, 5, 7, 9, 11)] == [2, 1, 0, 2, 2]  # over GF(4), x^2+x-1 = x^2+x+1
    assert [e_fn(x) for x in (4, 5, 7, 8, 9, 13)] == [1, 2, 0, 1, 2, 2]


def test_s_kn_size_examples():
    assert s_kn_size(2, 4, 5) == 92160 == 6 * 5 * 4 * 3 * 4**4
    assert s_kn_size(3, 6, 7) == 8 * 7 * 6 * 5 * 4 * 3 * 6**6
    with pytest.raises(OutOfRange):
        s_kn_size(3, 10, 7)


@pytest.mark.parametrize("qq", PRIME_POWERS)
def test_s_kn_over_gamma_is_group_order(qq):
    for n in range(4, qq + 2):
        for k in (2, n - 2):
            assert s_kn_size(k, n, qq) == gamma_grs(k, n, qq) * group_order_G(qq)


def test_grs_expansion_examples():
    assert grs_expansion(4) == QPolynomial([2, -7, 9, -5, 1])
    assert grs_expansion(6).evaluate_int(7) == 466560
    p5 = grs_expansion(5)
    assert p5.degree == 6 and p5.coefficient(6) == 1


@pytest.mark.parametrize("n", range(4, 13))
def test_expansion_matches_integer_formula(n):
    for qq in PRIME_POWERS:
        if n <= qq + 1:
            assert grs_expansion(n).evaluate_int(qq) == gamma_grs(2, n, qq)


@pytest.mark.parametrize("n", range(6, 13))
def test_asymptotic_grs(n):
    assert check_asymptotic_grs(n)


def test_asymptotic_grs_coefficient_examples():
    assert grs_expansion(6).coefficient(7) == -14
    want = Fraction(-(5 * 4 * (2401 - 686 + 343 - 98 - 16)), 48)
    assert grs_expansion(7).coefficient(7) == want


def test_asymptotic_grs_detects_wrong_formula(monkeypatch):
    good = formulas.grs_asymptotic_coefficients
    monkeypatch.setattr(formulas, "grs_asymptotic_coefficients", lambda n: good(n)[:3] + [good(n)[3] + 1])
    assert not check_asymptotic_grs(8)


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_asymptotic_mds3(n):
    assert check_asymptotic_mds3(n)


def test_asymptotic_mds3_examples():
    s6 = AsymptoticSpec(3, 6)
    assert (s6.delta, s6.N, s6.a2) == (9, 20, 152)
    p6 = mds3_polynomial_part(6)
    assert p6.coefficient(8) == -19 and p6.coefficient(7) == 152
    s7 = AsymptoticSpec(3, 7)
    assert mds3_polynomial_part(7).coefficient(11) == 1 - s7.N == -34
    assert AsymptoticSpec(4, 8).N == comb(8, 4)
    with pytest.raises(UnsupportedLength):
        check_asymptotic_mds3(10)


@pytest.mark.parametrize("n", [6, 7, 8, 9])
def test_mds3_polynomial_part_matches_evaluation(n):
    # for q where every helper vanishes, the polynomial part is the full count
    quiet = [qq for qq in (5, 11, 17, 23, 29, 47, 53)
             if all(f(qq) == 0 for f in (a_fn, b_fn, c_fn, d_fn, e_fn))]
    assert quiet == [23, 47]
    for qq in quiet:
        assert mds3_polynomial_part(n).evaluate_int(qq) == gamma_mds3(n, qq)


def test_table1_cells():
    rows = formulas.table1_formula_rows()
    assert len(rows) == 15
    assert rows == TABLE1


@pytest.mark.parametrize("r", [1, 2, 3])
def test_ratio_identity_integers(r):
    qq, n = 8, 10 - r
    # puncturing the last r coordinates is r!(q-1)^r to one onto the MDS codes of length q+2-r
    assert gamma_grs_hyper(qq) == factorial(r) * (qq - 1) ** r * gamma_mds3(n, qq)
    assert gamma_mds3(n, qq) * r == (qq + 2) * gamma_grs(3, n, qq)
    assert Fraction(gamma_mds3(n, qq), gamma_grs(3, n, qq)) == Fraction(qq + 2, r)

from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st
from strategies import polynomial_qscalars, qscalars, rational_points

from qhermite.qfield import (
    ONE,
    ZERO,
    QDivisionByZero,
    QScalar,
    VanishingDenominatorError,
    eval_at,
    q,
    qbinom,
    qdoublefact_odd,
    qfact,
    qint,
    qpochhammer,
    qpow,
)


def _ev(v, r):
    try:
        return eval_at(v, r)
    except VanishingDenominatorError:
        return None


# -- canonical form -----------------------------------------------------------

def test_reduction_cancels_common_factor():
    v = QScalar([-1, 0, 1], [-1, 1])  # (q^2-1)/(q-1)
    assert v == QScalar([1, 1])
    assert v.is_polynomial()


def test_denominator_sign_and_content_normalised():
    v = QScalar([2], [-4, -2])  # 2/(-4-2q) = -1/(2+q)
    assert v.numerator_coeffs() == [-1]
    assert v.denominator_coeffs() == [2, 1]


def test_zero_denominator_rejected():
    with pytest.raises(QDivisionByZero):
        QScalar(1, 0)
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_eval_at_pole_raises():
    with pytest.raises(VanishingDenominatorError):
        eval_at(1 / (1 - q), 1)


def test_str_forms():
    assert str(2 + q) == "2+q"
    # the denominator carries a positive leading coefficient
    assert str((1 + q) / (1 - q)) == "(-1-q)/(-1+q)"
    assert str(-q**3) == "-q^3"
    assert str(ZERO) == "0"
    assert (q**2 / 3).latex() == r"\frac{q^{2}}{3}"


@given(qscalars())
def test_json_round_trip(v):
    assert QScalar.from_json(v.to_json()) == v


@given(qscalars(), qscalars())
def test_equal_values_hash_equal(a, b):
    if a == b:
        assert hash(a) == hash(b)
    assert hash(a + b) == hash(b + a)


# -- field axioms via evaluation ----------------------------------------------

@given(qscalars(), qscalars(), rational_points)
def test_evaluation_is_a_ring_homomorphism(a, b, r):
    ea, eb = _ev(a, r), _ev(b, r)
    assume(ea is not None and eb is not None)
    assert eval_at(a + b, r) == ea + eb
    assert eval_at(a - b, r) == ea - eb
    assert eval_at(a * b, r) == ea * eb


@given(qscalars(), qscalars(), qscalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == ONE
        assert (b / a) * a == b


@given(qscalars(), st.integers(-3, 3))
def test_integer_powers(a, e):
    assume(a or e >= 0)
    expected = ONE
    for _ in range(abs(e)):
        expected = expected * a
    if e < 0:
        expected = expected.inverse()
    assert a**e == expected


@given(qscalars(), st.sampled_from([-3, -2, -1, 2, 3]), rational_points)
def test_subs_qpow_matches_evaluation(a, e, r):
    ea = _ev(a, r**e)
    sub = a.subs_qpow(e)
    assume(ea is not None)
    assert _ev(sub, r) == ea


# -- q-combinatorics ------------------------------------------------------------

def test_qint_values():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(3) == 1 + q + q**2
    assert qint(5) == (1 - q**5) / (1 - q)


def test_qbinom_known_value():
    assert qbinom(4, 2).numerator_coeffs() == [1, 1, 2, 1, 1]
    assert qbinom(3, 5) == ZERO
    assert qbinom(3, -1) == ZERO


@given(st.integers(0, 12), st.integers(0, 12))
def test_qbinom_at_one_is_binomial(n, k):
    assert eval_at(qbinom(n, k), 1) == (comb(n, k) if k <= n else 0)


@given(st.integers(1, 12), st.integers(0, 12))
def test_pascal_rules(n, k):
    assert qbinom(n, k) == qbinom(n - 1, k - 1) + qpow(k) * qbinom(n - 1, k)
    if k <= n:
        assert qbinom(n, k) == qpow(n - k) * qbinom(n - 1, k - 1) + qbinom(n - 1, k)


@given(st.integers(0, 10), st.integers(0, 10))
def test_qbinom_from_pochhammer(n, k):
    assume(k <= n)
    assert qbinom(n, k) == qpochhammer(q, n) / (qpochhammer(q, k) * qpochhammer(q, n - k))
    assert qbinom(n, k) == qfact(n) / (qfact(k) * qfact(n - k))


def test_double_factorial():
    assert qdoublefact_odd(0) == ONE
    assert qdoublefact_odd(3) == qint(1) * qint(3) * qint(5)
    assert eval_at(qdoublefact_odd(4), 1) == 105


def test_pochhammer_terminates_at_zero():
    # (q^-2; q)_k vanishes for k > 2
    assert qpochhammer(qpow(-2), 3) == ZERO
    assert qpochhammer(qpow(-2), 2) == (1 - qpow(-2)) * (1 - qpow(-1))


@given(st.integers(-6, 6), st.integers(-6, 6))
def test_qpow_group_law(a, b):
    assert qpow(a) * qpow(b) == qpow(a + b)


@given(polynomial_qscalars(), st.fractions(max_denominator=5))
def test_eval_fraction_exact(a, r):
    coeffs = a.numerator_coeffs()
    expected = sum((Fraction(c) * Fraction(r) ** i for i, c in enumerate(coeffs)), Fraction(0))
    assert eval_at(a, r) == expected

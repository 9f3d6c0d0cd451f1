from __future__ import annotations

import pytest
from golden import CLASSICAL_H, CONT_H_TEXT, H_SMALL, H_TEXT, P_Z
from hypothesis import given
from hypothesis import strategies as st

from qhermite.families import (
    FAMILIES,
    al_salam_chihara,
    asc_explicit_rescaled,
    chebyshev_T,
    cont_qhermite,
    disc_qhermite_I,
    disc_qhermite_II_rescaled,
    family,
    fib_classical,
    fib_explicit,
    h_explicit,
    hermite_classical,
    hermite_classical_explicit,
    l_family,
    lucas_classical,
    lucas_explicit,
    new_qhermite,
    orth_poly_sequence,
    qfib,
    qfib_operator,
    qlucas,
    qlucas_operator,
    r_family,
    t_family,
)
from qhermite.momentengine import jspec_newH
from qhermite.mpoly import S, X, XSPoly, qderiv_x, xs_text, z_text
from qhermite.qfield import q, qint, qpow


def test_new_qhermite_first_terms():
    assert [xs_text(p) for p in new_qhermite(5)] == H_TEXT


def test_cont_qhermite_first_terms():
    assert [xs_text(p) for p in cont_qhermite(5)] == CONT_H_TEXT


def test_classical_hermite_first_terms():
    assert [xs_text(p) for p in hermite_classical(5)] == [xs_text(p) for p in CLASSICAL_H]


def test_h_first_terms():
    assert [xs_text(p) for p in disc_qhermite_II_rescaled(4)] == [xs_text(p) for p in H_SMALL]


def test_orthogonal_polynomials_first_terms():
    spec = jspec_newH()
    got = orth_poly_sequence(spec.b, spec.lam, 3)
    assert [z_text(p) for p in got] == [z_text(p) for p in P_Z]


@pytest.mark.parametrize("n", range(6))
def test_rescaled_explicit_sum(n):
    spec = jspec_newH()
    assert asc_explicit_rescaled(n) == orth_poly_sequence(spec.b, spec.lam, n)[n]


def test_asc_matches_rescaled_parameters():
    # P_n(z; x, 0, -s) has b_n = x q^n and lam_n = -s [n]
    spec = jspec_newH()
    assert al_salam_chihara(X, 0, -S, 4) == orth_poly_sequence(spec.b, spec.lam, 4)


@pytest.mark.parametrize("n", range(11))
def test_recurrences_match_explicit_sums(n):
    assert disc_qhermite_II_rescaled(n)[n] == h_explicit(n)
    assert hermite_classical(n)[n] == hermite_classical_explicit(n)
    assert lucas_classical(n)[n] == lucas_explicit(n)
    assert fib_classical(n)[n] == fib_explicit(n)


@pytest.mark.parametrize("n", range(8))
def test_q_lucas_fibonacci_operator_definitions(n):
    assert qlucas(n)[n] == qlucas_operator(n)[n]
    assert qfib(n)[n] == qfib_operator(n)[n]


def test_lucas_convention_l0_is_one():
    assert lucas_classical(2).entries == (XSPoly.const(1), X, X * X + S * 2)


@given(st.integers(1, 10))
def test_qdif(n):
    h = disc_qhermite_II_rescaled(n)
    assert qderiv_x(h[n]) == h[n - 1].subst_x_scale(q).scale(qint(n))


@given(st.integers(0, 9))
def test_l_family_shift_identity(n):
    L = l_family(n + 1)
    assert S * L[n] + X * L[n + 1] == (X * X + S) * L[n].subst_x_scale(q)


@given(st.integers(1, 9))
def test_l1(n):
    L = l_family(n + 1)
    assert L[n + 1] - X * L[n] == (X * L[n] + S * L[n - 1]).scale(qpow(n) - 1)


@given(st.integers(0, 10))
def test_parity(n):
    for fam in (new_qhermite, cont_qhermite, disc_qhermite_II_rescaled, t_family, r_family, disc_qhermite_I):
        assert fam(n)[n].only_parity(n)


@given(st.integers(0, 10))
def test_q_to_one_recovers_classical(n):
    assert new_qhermite(n)[n].specialize_q(1) == hermite_classical(n)[n]
    assert cont_qhermite(n)[n].specialize_q(1) == hermite_classical(n)[n]


def test_t_is_h_with_scaled_s():
    H = new_qhermite(8)
    T = t_family(8)
    assert all(T[n] == H[n].subst_s_scale(q - 1) for n in range(9))


def test_chebyshev():
    T = chebyshev_T(4)
    assert T[4] == X**4 * 8 - X * X * 8 + 1


def test_registry_names_and_errors():
    for name in FAMILIES:
        assert len(family(name, 3)) == 4
    with pytest.raises(KeyError, match="valid names"):
        family("no_such_family", 3)
    with pytest.raises(ValueError):
        new_qhermite(-1)

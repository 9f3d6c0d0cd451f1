from __future__ import annotations

from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhermite.matchoracle import (
    MAX_ENUM_N,
    Matching,
    OracleCapError,
    StatTriple,
    b_table,
    c_table,
    c_table_recurrence,
    c_value,
    enumerate_matchings,
    stats,
)
from qhermite.qfield import ONE, ZERO, QScalar, eval_at, q

# number of involutions of [n]
INVOLUTIONS = [1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496]


def _double_fact_odd(k):
    out = 1
    for i in range(1, 2 * k, 2):
        out *= i
    return out


@pytest.mark.parametrize("n", range(11))
def test_matching_counts(n):
    ms = list(enumerate_matchings(n))
    assert len(ms) == INVOLUTIONS[n]
    assert len(set(ms)) == len(ms)


@pytest.mark.parametrize("n", range(9))
def test_counts_by_edge_number(n):
    by_ed: dict[int, int] = {}
    for m in enumerate_matchings(n):
        by_ed[m.ed] = by_ed.get(m.ed, 0) + 1
    assert by_ed == {e: comb(n, 2 * e) * _double_fact_odd(e) for e in range(n // 2 + 1)}


def test_statistics_by_hand():
    assert stats(Matching(3, ((1, 3),))) == StatTriple(ed=1, cr=0, c=1)
    assert stats(Matching(4, ((1, 3), (2, 4)))) == StatTriple(ed=2, cr=1, c=0)
    assert stats(Matching(4, ((1, 4), (2, 3)))) == StatTriple(ed=2, cr=0, c=0)
    assert stats(Matching(5, ((1, 5),))) == StatTriple(ed=1, cr=0, c=3)
    assert stats(Matching(5, ((1, 4), (3, 5)))) == StatTriple(ed=2, cr=1, c=1)


def test_invalid_matchings_rejected():
    with pytest.raises(ValueError):
        Matching(3, ((1, 4),))
    with pytest.raises(ValueError):
        Matching(4, ((1, 2), (2, 3)))
    with pytest.raises(ValueError):
        Matching(4, ((3, 4), (1, 2)))


def test_known_values():
    assert c_table(4)[0] == 2 + q
    assert c_table(6)[0].numerator_coeffs() == [5, 6, 3, 1]
    assert c_table(4)[2] == 3 + 2 * q + q**2
    assert c_table(3)[1] == 2 + q


@pytest.mark.parametrize("n", range(11))
def test_enumeration_matches_recurrence(n):
    assert c_table(n) == c_table_recurrence(n)


@given(st.integers(0, 12))
def test_diagonal_and_parity(n):
    assert c_value(n, n) == ONE
    assert c_value(n, n - 1) == ZERO
    assert c_value(n, n + 2) == ZERO


@given(st.integers(0, 7))
def test_q_equals_one_counts_matchings(n):
    for k, v in c_table(n).items():
        e = (n - k) // 2
        assert eval_at(v, 1) == comb(n, 2 * e) * _double_fact_odd(e)


def test_cap_is_enforced():
    with pytest.raises(OracleCapError):
        c_table(MAX_ENUM_N + 1)
    with pytest.raises(OracleCapError):
        next(enumerate_matchings(MAX_ENUM_N + 1))


def test_b_table_reads_continuous_hermite():
    assert b_table(4) == {0: 1 + q + q**2, 2: 3 + 2 * q + q**2, 4: ONE}
    assert all(isinstance(v, QScalar) for v in b_table(5).values())


@given(st.integers(0, 8).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 10**6))))
def test_crossings_bounded_by_edge_pairs(arg):
    n, pick = arg
    ms = list(enumerate_matchings(n))
    m = ms[pick % len(ms)]
    st_ = stats(m)
    assert 0 <= st_.cr <= comb(st_.ed, 2)
    assert 0 <= st_.c <= st_.ed * (n - 2 * st_.ed)

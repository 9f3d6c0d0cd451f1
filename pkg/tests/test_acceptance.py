"""Acceptance run: one test per criterion, exact equality throughout.

Each test records a ``PASS``/``FAIL`` line in ``RESULT_LINES``; ``conftest.py``
prints them at the end of the session.  Timing bounds are part of each
criterion and are asserted alongside correctness.
"""

from __future__ import annotations

import time

from golden import CONT_H_TEXT, H_SMALL, H_TEXT, P_Z

from qhermite import matchoracle
from qhermite.families import cont_qhermite, disc_qhermite_II_rescaled, new_qhermite, orth_poly_sequence
from qhermite.identities import (
    run_all,
    verify_appendix,
    verify_classical_inversions,
    verify_cor12,
    verify_cor13,
    verify_engine_invariants,
    verify_family_invariants,
    verify_h_family,
    verify_hankel_newH,
    verify_matrix_inverse,
    verify_operator_equals_moments,
    verify_prop14,
    verify_prop15_numeric,
    verify_specializations,
    verify_T_theorem,
    verify_thm_hf,
    verify_w_prop,
)
from qhermite.momentengine import jspec_newH
from qhermite.mpoly import xs_text, z_text

RESULT_LINES: list[str] = []


def _record(k: int, title: str, ok: bool, elapsed: float, limit: float | None, detail: str = "") -> None:
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    bound = f" (limit {limit:g}s)" if limit is not None else ""
    line = f"{status} criterion {k:2d}: {title} [{elapsed:.2f}s{bound}]"
    if detail:
        line += f" {detail}"
    RESULT_LINES.append(line)
    print(line)
    assert ok, detail or title
    assert within, f"criterion {k} took {elapsed:.2f}s, limit {limit}s"


def _reports(*reports):
    failed = [r for r in reports if not r.passed]
    return not failed, "; ".join(r.text() for r in failed)


def test_criterion_01_first_terms():
    t0 = time.perf_counter()
    spec = jspec_newH()
    ok = (
        [xs_text(p) for p in new_qhermite(5)] == H_TEXT
        and [xs_text(p) for p in cont_qhermite(5)] == CONT_H_TEXT
        and [xs_text(p) for p in disc_qhermite_II_rescaled(4)] == [xs_text(p) for p in H_SMALL]
        and [z_text(p) for p in orth_poly_sequence(spec.b, spec.lam, 3)] == [z_text(p) for p in P_Z]
    )
    _record(1, "first terms of H, cont H, h and P_n(z)", ok, time.perf_counter() - t0, 1.0)


def test_criterion_02_operator_moments_matchings():
    # time the enumeration itself, not a cache hit from an earlier test
    matchoracle._c_table_brute.cache_clear()
    t0 = time.perf_counter()
    report = verify_operator_equals_moments(10)
    count = sum(1 for _ in matchoracle.enumerate_matchings(10))
    ok, detail = _reports(report)
    ok = ok and count == 9496
    _record(2, f"operator = moments = matchings, n<=10 ({count} matchings at n=10)", ok,
            time.perf_counter() - t0, 10.0, detail)


def test_criterion_03_matrix_inverse():
    t0 = time.perf_counter()
    ok, detail = _reports(verify_matrix_inverse(12))
    _record(3, "c and signed b triangles inverse, key expansion, n<=12", ok, time.perf_counter() - t0, 5.0, detail)


def test_criterion_04_hankel_suites():
    t0 = time.perf_counter()
    ok, detail = _reports(verify_hankel_newH(5), verify_h_family(4), verify_appendix(8))
    _record(4, "Hankel determinants of H, h and cont H", ok, time.perf_counter() - t0, 60.0, detail)


def test_criterion_05_h_and_T_moments():
    t0 = time.perf_counter()
    ok, detail = _reports(verify_h_family(12), verify_T_theorem(12))
    _record(5, "h and T moments n<=12, S-coefficients n<=6, functional equation", ok,
            time.perf_counter() - t0, 30.0, detail)


def test_criterion_06_w_moments():
    t0 = time.perf_counter()
    ok, detail = _reports(verify_w_prop(3, 8))
    _record(6, "w moments for m<=3, n<=8", ok, time.perf_counter() - t0, 5.0, detail)


def test_criterion_07_lucas_fibonacci_suite():
    t0 = time.perf_counter()
    ok, detail = _reports(
        verify_classical_inversions(10),
        verify_thm_hf(8),
        verify_cor12(12),
        verify_cor13(5),
        verify_prop14(10),
    )
    _record(7, "inversions, q-Lucas/q-Fibonacci expansions, evaluations, c(n,k,q) closed forms", ok,
            time.perf_counter() - t0, 30.0, detail)


def test_criterion_08_double_sum_numeric():
    t0 = time.perf_counter()
    a = verify_prop15_numeric(6, 20, seed=0)
    b = verify_prop15_numeric(6, 20, seed=0)
    ok, detail = _reports(a)
    ok = ok and a == b
    _record(8, "double sum at 20 random rational points per n, n<=6, seeded", ok,
            time.perf_counter() - t0, 10.0, detail)


def test_criterion_09_specializations():
    t0 = time.perf_counter()
    ok, detail = _reports(verify_specializations(10))
    _record(9, "q=1 classical Hermite, q=0 Catalan columns, (2n-1)!!", ok, time.perf_counter() - t0, None, detail)


def test_criterion_10_invariants_and_full_run():
    matchoracle._c_table_brute.cache_clear()
    matchoracle._c_rec.cache_clear()
    t0 = time.perf_counter()
    reports = [verify_family_invariants(12), verify_engine_invariants(8), *run_all(10)]
    ok, detail = _reports(*reports)
    _record(10, f"invariant suite and full registry run ({len(reports) - 2} identities)", ok,
            time.perf_counter() - t0, 180.0, detail)

"""Exact symbolic toolkit for q-analogues of Hermite polynomials.

Polynomials in x and s with coefficients in Q(q), the continued fractions that
generate them as moments, a brute-force matching oracle, and a suite of exact
identity checks.
"""

from __future__ import annotations

from .families import FAMILIES, FamilyTable, family
from .identities import IDENTITIES, VerifyReport, run_all
from .matchoracle import c_table, c_table_recurrence, enumerate_matchings, stats
from .momentengine import (
    CoeffSeq,
    JSpec,
    SSpec,
    contract,
    hankel_det,
    moments,
    named_jspec,
    sfraction_from_series,
    sfraction_series,
    stieltjes_table,
)
from .mpoly import S, X, XSPoly, ZPoly, qderiv_x
from .qfield import QScalar, q, qbinom, qint

__all__ = [
    "CoeffSeq", "FAMILIES", "FamilyTable", "IDENTITIES", "JSpec", "QScalar", "S", "SSpec",
    "VerifyReport", "X", "XSPoly", "ZPoly", "c_table", "c_table_recurrence", "contract",
    "enumerate_matchings", "family", "hankel_det", "moments", "named_jspec", "q", "qbinom",
    "qderiv_x", "qint", "run_all", "sfraction_from_series", "sfraction_series", "stats",
    "stieltjes_table",
]

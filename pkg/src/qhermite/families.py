"""Constructors for the Hermite-type polynomial families.

Every family is built from its defining recurrence (or operator formula);
the explicit sums live next to it so the two can be compared.  All tables are
computed eagerly up to the requested index.

Note: two different families share one label in the source literature (the
discrete q-Hermite I and II definitions); here they are ``disc_qhermite_I`` and
``disc_qhermite_II_rescaled``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Sequence

from .mpoly import S, X, XSLike, XSPoly, ZPoly, as_xspoly, operator_orbit
from .qfield import (
    q,
    qbinom,
    qdoublefact_odd,
    qint,
    qpochhammer,
    qpow,
)


@dataclass(frozen=True)
class FamilyTable:
    name: str
    entries: tuple[XSPoly, ...]

    def __getitem__(self, n: int) -> XSPoly:
        return self.entries[n]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def _table(name: str, entries: Sequence[XSPoly]) -> FamilyTable:
    return FamilyTable(name, tuple(entries))


def _check_n(N: int) -> None:
    if N < 0:
        raise ValueError("N must be nonnegative")


def _three_term(N: int, p1: XSPoly, step: Callable[[int, XSPoly, XSPoly], XSPoly]) -> list[XSPoly]:
    """p_0 = 1, p_1 given, p_{n+1} = step(n, p_n, p_{n-1})."""
    out = [XSPoly.const(1)]
    if N >= 1:
        out.append(p1)
    for n in range(1, N):
        out.append(step(n, out[n], out[n - 1]))
    return out


# -- classical Hermite ------------------------------------------------------

def hermite_classical(N: int) -> FamilyTable:
    _check_n(N)
    return _table("hermite_classical", _three_term(N, X, lambda n, a, b: X * a - S * b * n))


def _double_fact_odd(k: int) -> int:
    out = 1
    for i in range(1, 2 * k, 2):
        out *= i
    return out


def hermite_classical_explicit(n: int) -> XSPoly:
    return sum(
        (XSPoly.monomial(n - 2 * k, k, comb(n, 2 * k) * (-1) ** k * _double_fact_odd(k)) for k in range(n // 2 + 1)),
        XSPoly(),
    )


# -- orthogonal sequences -------------------------------------------------

def orth_poly_sequence(b: Callable[[int], XSLike], lam: Callable[[int], XSLike], N: int) -> list[ZPoly]:
    """p_{n+1}(z) = (z - b_n) p_n(z) - lam_n p_{n-1}(z), p_0 = 1, p_{-1} = 0.

    ``lam`` is indexed from 1.
    """
    _check_n(N)
    out = [ZPoly.const(1)]
    prev = ZPoly()
    for n in range(N):
        cur = out[-1]
        nxt = cur.mul_z() - cur * as_xspoly(b(n))
        if n >= 1:
            nxt = nxt - prev * as_xspoly(lam(n))
        prev = cur
        out.append(nxt)
    return out


def asc_coefficients(a: XSLike, b: XSLike, c: XSLike) -> tuple[Callable[[int], XSPoly], Callable[[int], XSPoly]]:
    """Recurrence data of the Al-Salam-Chihara polynomials P_n(z; a, b, c).

    b_n = a q^n and lam_n = (c + b q^(n-1)) [n]_q.
    """
    a, b, c = as_xspoly(a), as_xspoly(b), as_xspoly(c)

    def bn(n: int) -> XSPoly:
        return a.scale(qpow(n))

    def lam(n: int) -> XSPoly:
        return (c + b.scale(qpow(n - 1))).scale(qint(n))

    return bn, lam


def al_salam_chihara(a: XSLike, b: XSLike, c: XSLike, N: int) -> list[ZPoly]:
    bn, lam = asc_coefficients(a, b, c)
    return orth_poly_sequence(bn, lam, N)


def asc_explicit_rescaled(n: int) -> ZPoly:
    """Explicit sum for P_n(z) with b_n = x q^n, lam_n = -s [n].

    The prefactor (s/(x(q-1)))^n puts x^n in the denominator; the sum is
    accumulated over the common denominator x^n and then divided exactly,
    which raises if the result were not a polynomial.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    qm1 = q - 1
    total = ZPoly()
    qmn = qpow(-n)
    for k in range(n + 1):
        coef = qpochhammer(qmn, k) / qpochhammer(q, k) * (-q) ** k / qm1**n
        if not coef:
            continue
        prod = ZPoly.const(1)
        for i in range(k):
            factor = ZPoly([-S - X * X * (qm1 * qpow(2 * i)), X.scale(qm1 * qpow(i))])
            prod = prod * factor
        # (s/x)^n (1/s)^k = s^(n-k) / x^n
        total = total + prod * XSPoly.monomial(0, n - k, coef)
    denom = XSPoly.monomial(n, 0)
    return total.map_coeffs(lambda c: c.divexact(denom))


# -- q-Hermite families ---------------------------------------------------

def _asc_at(a: XSLike, b: XSLike, c: XSLike, N: int, z: XSLike) -> list[XSPoly]:
    return [p.eval_z(z) for p in al_salam_chihara(a, b, c, N)]


def cont_qhermite(N: int) -> FamilyTable:
    """Continuous q-Hermite: P_n(x; 0, 0, s)."""
    _check_n(N)
    return _table("cont_qhermite", _asc_at(0, 0, S, N, X))


def disc_qhermite_I(N: int) -> FamilyTable:
    """Discrete q-Hermite I: P_n(x; 0, (1-q)s, 0)."""
    _check_n(N)
    return _table("disc_qhermite_I", _asc_at(0, S.scale(1 - q), 0, N, X))


def disc_qhermite_II_rescaled(N: int) -> FamilyTable:
    """h_n(x,s;q) = P_n(0; -x, 0, s)."""
    _check_n(N)
    return _table("disc_qhermite_II_rescaled", _asc_at(-X, 0, S, N, 0))


def h_explicit(n: int) -> XSPoly:
    out = XSPoly()
    for k in range(n // 2 + 1):
        c = qpow(comb(n - 2 * k, 2)) * qbinom(n, 2 * k) * qdoublefact_odd(k) * (-1) ** k
        out = out + XSPoly.monomial(n - 2 * k, k, c)
    return out


def h_wn(n: int) -> XSPoly:
    out = XSPoly()
    for k in range(n // 2 + 1):
        c = qpow(2 * comb(n - k, 2)) * qbinom(n, 2 * k) * qdoublefact_odd(k)
        out = out + XSPoly.monomial(n - 2 * k, k, c)
    return out


def new_qhermite(N: int) -> FamilyTable:
    """H_n(x,s|q) = (x - s D_q)^n 1."""
    _check_n(N)
    return _table("new_qhermite", operator_orbit(1, -1, N))


def t_family(N: int) -> FamilyTable:
    """T_n(x,s) = (x + (1-q) s D_q)^n 1."""
    _check_n(N)
    return _table("t_family", operator_orbit(1, 1 - q, N))


def l_family(N: int) -> FamilyTable:
    """L_n(x) = h_n(x, (1-q)s; q)."""
    h = disc_qhermite_II_rescaled(N)
    return _table("l_family", [p.subst_s_scale(1 - q) for p in h])


# -- Lucas / Fibonacci ----------------------------------------------------

def lucas_classical(N: int) -> FamilyTable:
    """l_0 = 1 (not 2), l_1 = x, l_2 = x^2 + 2s, l_n = x l_{n-1} + s l_{n-2}."""
    _check_n(N)
    out = [XSPoly.const(1), X, X * X + S * 2][: N + 1]
    for n in range(3, N + 1):
        out.append(X * out[n - 1] + S * out[n - 2])
    return _table("lucas_classical", out)


def fib_classical(N: int) -> FamilyTable:
    _check_n(N)
    out = [XSPoly(), XSPoly.const(1)][: N + 1]
    for n in range(2, N + 1):
        out.append(X * out[n - 1] + S * out[n - 2])
    return _table("fib_classical", out)


def lucas_explicit(n: int) -> XSPoly:
    if n == 0:
        return XSPoly.const(1)
    out = XSPoly()
    for k in range(n // 2 + 1):
        out = out + XSPoly.monomial(n - 2 * k, k, n * comb(n - k, k) // (n - k))
    return out


def fib_explicit(n: int) -> XSPoly:
    out = XSPoly()
    for k in range((n - 1) // 2 + 1 if n > 0 else 0):
        out = out + XSPoly.monomial(n - 1 - 2 * k, k, comb(n - 1 - k, k))
    return out


def qlucas(N: int) -> FamilyTable:
    _check_n(N)
    out = [XSPoly.const(1)]
    for n in range(1, N + 1):
        p = XSPoly()
        for k in range(n // 2 + 1):
            c = qpow(comb(k, 2)) * qint(n) / qint(n - k) * qbinom(n - k, k)
            p = p + XSPoly.monomial(n - 2 * k, k, c)
        out.append(p)
    return _table("qlucas", out)


def qfib(N: int) -> FamilyTable:
    _check_n(N)
    out = [XSPoly()]
    for n in range(1, N + 1):
        p = XSPoly()
        for k in range((n - 1) // 2 + 1):
            p = p + XSPoly.monomial(n - 1 - 2 * k, k, qpow(comb(k + 1, 2)) * qbinom(n - 1 - k, k))
        out.append(p)
    return _table("qfib", out)


def substitute_operator(p: XSPoly, orbit: Sequence[XSPoly]) -> XSPoly:
    """p(A, s) . 1 where ``orbit[m] = A^m . 1`` and A commutes with s."""
    out = XSPoly()
    for (i, j), c in p.terms.items():
        out = out + orbit[i] * XSPoly.monomial(0, j, c)
    return out


def qlucas_operator(N: int) -> FamilyTable:
    """L_n = l_n(x + (q-1) s D_q, s) . 1 computed from the operator definition."""
    orbit = operator_orbit(1, q - 1, N)
    return _table("qlucas_operator", [substitute_operator(p, orbit) for p in lucas_classical(N)])


def qfib_operator(N: int) -> FamilyTable:
    orbit = operator_orbit(1, q - 1, N)
    return _table("qfib_operator", [substitute_operator(p, orbit) for p in fib_classical(N)])


# -- Chebyshev and r(n) ---------------------------------------------------

def chebyshev_T(N: int) -> FamilyTable:
    _check_n(N)
    out = [XSPoly.const(1), X][: N + 1]
    for n in range(1, N):
        out.append(X * out[n] * 2 - out[n - 1])
    return _table("chebyshev_T", out)


def r_family(N: int) -> FamilyTable:
    """r(n) = q^(n-1) x r(n-1) + q^(n-2) s [n-1] r(n-2), r_0 = 1, r_1 = x."""
    _check_n(N)
    out = [XSPoly.const(1), X][: N + 1]
    for n in range(2, N + 1):
        out.append(X * out[n - 1] * qpow(n - 1) + S * out[n - 2] * (qpow(n - 2) * qint(n - 1)))
    return _table("r_family", out)


FAMILIES: dict[str, Callable[[int], FamilyTable]] = {
    "hermite_classical": hermite_classical,
    "new_qhermite": new_qhermite,
    "cont_qhermite": cont_qhermite,
    "disc_qhermite_I": disc_qhermite_I,
    "disc_qhermite_II_rescaled": disc_qhermite_II_rescaled,
    "t_family": t_family,
    "l_family": l_family,
    "lucas_classical": lucas_classical,
    "fib_classical": fib_classical,
    "qlucas": qlucas,
    "qfib": qfib,
    "chebyshev_T": chebyshev_T,
    "r_family": r_family,
    "w_family": lambda N: _table("w_family", [h_wn(n) for n in range(N + 1)]),
    "h_explicit": lambda N: _table("h_explicit", [h_explicit(n) for n in range(N + 1)]),
}


def family(name: str, N: int) -> FamilyTable:
    try:
        ctor = FAMILIES[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; valid names: {', '.join(FAMILIES)}") from None
    return ctor(N)

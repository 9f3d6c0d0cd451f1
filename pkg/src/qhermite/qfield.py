"""Exact arithmetic in the field Q(q) of rational functions in one indeterminate.

A :class:`QScalar` is a reduced fraction ``num/den`` of integer polynomials in q.
Integer polynomials (``QPolyZ``) are FLINT ``fmpz_poly`` objects; the canonical
form (coprime, no common integer content, positive leading coefficient of the
denominator) is maintained here, so equality is a plain comparison.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from flint import fmpq, fmpz_poly

QPolyZ = fmpz_poly

_ZERO = fmpz_poly([])
_ONE = fmpz_poly([1])


class QFieldError(ArithmeticError):
    pass


class QDivisionByZero(QFieldError, ZeroDivisionError):
    pass


class VanishingDenominatorError(QFieldError):
    """Raised when a rational function is evaluated at a pole."""

    def __init__(self, point: Fraction, value: "QScalar | None" = None):
        self.point = point
        self.value = value
        msg = f"denominator vanishes at q = {point}"
        if value is not None:
            msg += f" (evaluating {value})"
        super().__init__(msg)


def _as_poly(v) -> fmpz_poly:
    if isinstance(v, fmpz_poly):
        return v
    if isinstance(v, int):
        return fmpz_poly([v]) if v else _ZERO
    return fmpz_poly([int(c) for c in v])


def _coeffs(p: fmpz_poly) -> list[int]:
    return [int(c) for c in p.coeffs()]


class QScalar:
    """Element of Q(q) in canonical form.

    Accepts ints, integer coefficient lists (ascending in q) or ``fmpz_poly``
    for both numerator and denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise QDivisionByZero("zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _new(cls, num: fmpz_poly, den: fmpz_poly) -> "QScalar":
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def from_fraction(cls, r: Fraction | int) -> "QScalar":
        r = Fraction(r)
        return cls(r.numerator, r.denominator)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.degree() <= 0 and self.den.degree() == 0

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.den.is_one() and o.den.is_one():
            return QScalar._new(self.num + o.num, _ONE)
        if self.den == o.den:
            return QScalar._new(*_normalize(self.num + o.num, self.den))
        return QScalar._new(*_normalize(self.num * o.den + o.num * self.den, self.den * o.den))

    __radd__ = __add__

    def __neg__(self):
        return QScalar._new(-self.num, self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.den.is_one() and o.den.is_one():
            return QScalar._new(self.num * o.num, _ONE)
        return QScalar._new(*_normalize(self.num * o.num, self.den * o.den))

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if self.num.is_zero():
            raise QDivisionByZero("inverse of zero in Q(q)")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return QScalar._new(num, den)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return QScalar._new(self.num**e, self.den**e)

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(_coeffs(self.num)), tuple(_coeffs(self.den))))

    # -- transformations --------------------------------------------------
    def subs_qpow(self, e: int) -> "QScalar":
        """Substitute q -> q**e (e may be negative, not zero)."""
        if e == 0:
            raise ValueError("q -> q**0 is not an automorphism")
        if e > 0:
            return QScalar(self.num.inflate(e) if self.num.degree() > 0 else self.num,
                           self.den.inflate(e) if self.den.degree() > 0 else self.den)
        k = -e
        # p(q^-k) = q^(-k deg p) * rev(p)(q^k)
        dn, dd = max(self.num.degree(), 0), max(self.den.degree(), 0)
        num = _inflate(_reverse(self.num), k)
        den = _inflate(_reverse(self.den), k)
        shift = k * (dd - dn)
        if shift >= 0:
            num = num * _qmono(shift)
        else:
            den = den * _qmono(-shift)
        return QScalar(num, den)

    def eval_at(self, r) -> Fraction:
        return eval_at(self, r)

    # -- output -----------------------------------------------------------
    def numerator_coeffs(self) -> list[int]:
        return _coeffs(self.num)

    def denominator_coeffs(self) -> list[int]:
        return _coeffs(self.den)

    def to_json(self) -> dict:
        return {"num": _coeffs(self.num), "den": _coeffs(self.den)}

    @classmethod
    def from_json(cls, obj: dict) -> "QScalar":
        return cls(list(obj["num"]), list(obj["den"]))

    def __str__(self):
        n = poly_text(_coeffs(self.num))
        if self.den.is_one():
            return n
        d = poly_text(_coeffs(self.den))
        if self.num.length() > 1:
            n = f"({n})"
        if self.den.length() > 1 or self.den.degree() > 0:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"QScalar({str(self)!r})"

    def latex(self) -> str:
        n = poly_latex(_coeffs(self.num))
        if self.den.is_one():
            return n
        return r"\frac{%s}{%s}" % (n, poly_latex(_coeffs(self.den)))


QLike = Union[QScalar, int, Fraction]


def _normalize(num: fmpz_poly, den: fmpz_poly) -> tuple[fmpz_poly, fmpz_poly]:
    if num.is_zero():
        return _ZERO, _ONE
    if den.is_one():
        return num, den
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


def _reverse(p: fmpz_poly) -> fmpz_poly:
    return fmpz_poly(list(reversed(p.coeffs())))


def _inflate(p: fmpz_poly, k: int) -> fmpz_poly:
    return p.inflate(k) if p.degree() > 0 else p


@lru_cache(maxsize=None)
def _qmono(n: int) -> fmpz_poly:
    return fmpz_poly([0] * n + [1])


def _coerce(v) -> QScalar:
    if isinstance(v, QScalar):
        return v
    if isinstance(v, int):
        return QScalar._new(fmpz_poly([v]) if v else _ZERO, _ONE)
    if isinstance(v, Fraction):
        return QScalar.from_fraction(v)
    return NotImplemented


def as_qscalar(v: QLike) -> QScalar:
    r = _coerce(v)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {type(v).__name__} as an element of Q(q)")
    return r


ZERO = QScalar()
ONE = QScalar(1)
q = QScalar([0, 1])


def qpow(n: int) -> QScalar:
    """q**n for any integer n."""
    if n >= 0:
        return QScalar._new(_qmono(n), _ONE)
    return QScalar._new(_ONE, _qmono(-n))


# -- q-combinatorics ------------------------------------------------------

@lru_cache(maxsize=None)
def qint(n: int) -> QScalar:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return QScalar._new(fmpz_poly([1] * n) if n else _ZERO, _ONE)


@lru_cache(maxsize=None)
def qfact(n: int) -> QScalar:
    if n < 0:
        raise ValueError("qfact needs n >= 0")
    return ONE if n == 0 else qfact(n - 1) * qint(n)


@lru_cache(maxsize=None)
def qdoublefact_odd(n: int) -> QScalar:
    """[2n-1]_q!! = prod_{k=1..n} [2k-1]_q."""
    if n < 0:
        raise ValueError("qdoublefact_odd needs n >= 0")
    return ONE if n == 0 else qdoublefact_odd(n - 1) * qint(2 * n - 1)


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> QScalar:
    """Gaussian binomial, zero outside 0 <= k <= n (Pascal rule, polynomial throughout)."""
    if n < 0:
        raise ValueError("qbinom needs n >= 0")
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return qbinom(n - 1, k - 1) + qpow(k) * qbinom(n - 1, k)


def qpochhammer(a: QLike, n: int) -> QScalar:
    """(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1))."""
    if n < 0:
        raise ValueError("qpochhammer needs n >= 0")
    a = as_qscalar(a)
    out = ONE
    for i in range(n):
        out = out * (1 - a * qpow(i))
        if out.is_zero():
            break
    return out


def eval_at(v: QLike, r) -> Fraction:
    """Exact value of ``v`` at q = r (a rational)."""
    v = as_qscalar(v)
    r = Fraction(r)
    x = fmpq(r.numerator, r.denominator)
    d = v.den(x)
    if d == 0:
        raise VanishingDenominatorError(r, v)
    val = v.num(x) / d
    return Fraction(int(val.p), int(val.q))


# -- printing -------------------------------------------------------------

def _qmono_text(i: int) -> str:
    return "" if i == 0 else ("q" if i == 1 else f"q^{i}")


def poly_text(coeffs: Iterable[int]) -> str:
    """Ascending text form of an integer polynomial in q, e.g. ``2+q-3q^2``."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _qmono_text(i)
        body = mono if (a == 1 and mono) else f"{a}{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    s = "".join(f"{sg}{b}" for sg, b in parts)
    return s[1:] if s[0] == "+" else s


def poly_latex(coeffs: Iterable[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{{{i}}}")
        a = abs(c)
        body = mono if (a == 1 and mono) else f"{a}{mono}"
        parts.append(("-" if c < 0 else "+") + body)
    if not parts:
        return "0"
    s = "".join(parts)
    return s[1:] if s[0] == "+" else s

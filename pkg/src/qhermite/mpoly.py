"""Polynomials in x and s over Q(q), and polynomials in z over that ring.

Terms are kept in a dict keyed by ``(xdeg, sdeg)``.  The canonical term order
is ascending graded-lex with x > s: total degree first, then x-degree.  ``s``
is an inert commuting variable; the q-derivative acts on x only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from flint import fmpz_poly

from .qfield import ONE, ZERO, QLike, QScalar, as_qscalar, eval_at, qint, q

Key = tuple[int, int]

_ONE_POLY = fmpz_poly([1])


class NotDivisibleError(ArithmeticError):
    pass


def _order(k: Key) -> tuple[int, int]:
    return (k[0] + k[1], k[0])


class XSPoly:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in term {(i, j)}")
            c = as_qscalar(c)
            if c:
                clean[(i, j)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _new(cls, terms: dict) -> "XSPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: QLike) -> "XSPoly":
        c = as_qscalar(c)
        return cls._new({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, xdeg: int, sdeg: int, c: QLike = 1) -> "XSPoly":
        return cls({(xdeg, sdeg): c})

    # -- inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coeff(self, xdeg: int, sdeg: int) -> QScalar:
        return self.terms.get((xdeg, sdeg), ZERO)

    def keys(self) -> list[Key]:
        return sorted(self.terms, key=_order)

    def items(self) -> Iterator[tuple[Key, QScalar]]:
        for k in self.keys():
            yield k, self.terms[k]

    def __len__(self) -> int:
        return len(self.terms)

    def xdegree(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def sdegree(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant_value(self) -> QScalar:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coeff(0, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            return self
        out = dict(self.terms)
        for k, c in o.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return XSPoly._new(out)

    __radd__ = __add__

    def __neg__(self):
        return XSPoly._new({k: -c for k, c in self.terms.items()})

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

    def scale(self, c: QLike) -> "XSPoly":
        c = as_qscalar(c)
        if not c:
            return XSPoly._new({})
        if c.is_one():
            return self
        return XSPoly._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, XSPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return XSPoly._new({})
        a, b = self.terms, other.terms
        if all(c.den.is_one() for c in a.values()) and all(c.den.is_one() for c in b.values()):
            # stay in Z[q] until the end
            acc: dict[Key, fmpz_poly] = {}
            for (i1, j1), c1 in a.items():
                n1 = c1.num
                for (i2, j2), c2 in b.items():
                    k = (i1 + i2, j1 + j2)
                    p = n1 * c2.num
                    v = acc.get(k)
                    acc[k] = p if v is None else v + p
            return XSPoly._new({k: QScalar._new(v, _ONE_POLY) for k, v in acc.items() if not v.is_zero()})
        out: dict[Key, QScalar] = {}
        for (i1, j1), c1 in a.items():
            for (i2, j2), c2 in b.items():
                k = (i1 + i2, j1 + j2)
                p = c1 * c2
                v = out.get(k)
                out[k] = p if v is None else v + p
        return XSPoly._new({k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (QScalar, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = XSPoly.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def divexact(self, other: "XSPoly") -> "XSPoly":
        """Exact quotient in Q(q)[x,s]; raises NotDivisibleError otherwise."""
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(other.terms[(0, 0)].inverse())
        lk = max(other.terms)
        lc_inv = other.terms[lk].inverse()
        dterms = list(other.terms.items())
        rem = dict(self.terms)
        quot: dict[Key, QScalar] = {}
        while rem:
            k = max(rem)
            mi, mj = k[0] - lk[0], k[1] - lk[1]
            if mi < 0 or mj < 0:
                raise NotDivisibleError("polynomial division leaves a remainder")
            c = rem[k] * lc_inv
            quot[(mi, mj)] = c
            for (di, dj), dc in dterms:
                key = (di + mi, dj + mj)
                v = rem.get(key, ZERO) - c * dc
                if v:
                    rem[key] = v
                else:
                    rem.pop(key, None)
        return XSPoly._new(quot)

    # -- maps and substitutions ------------------------------------------
    def map_coeffs(self, f: Callable[[QScalar], QScalar]) -> "XSPoly":
        return XSPoly({k: f(c) for k, c in self.terms.items()})

    def subs_qpow(self, e: int) -> "XSPoly":
        return self.map_coeffs(lambda c: c.subs_qpow(e))

    def subst_x_scale(self, c: QLike) -> "XSPoly":
        return subst_x_scale(self, c)

    def subst_s_scale(self, c: QLike) -> "XSPoly":
        """Substitute s -> c*s."""
        c = as_qscalar(c)
        return XSPoly({(i, j): v * c**j for (i, j), v in self.terms.items()})

    def subst_values(self, xv: QLike, sv: QLike) -> QScalar:
        return subst_values(self, xv, sv)

    def specialize_q(self, r) -> "XSPoly":
        """Evaluate every coefficient at q = r (rational)."""
        return XSPoly({k: QScalar.from_fraction(eval_at(c, r)) for k, c in self.terms.items()})

    def eval_rational(self, qv, xv, sv) -> Fraction:
        qv, xv, sv = Fraction(qv), Fraction(xv), Fraction(sv)
        total = Fraction(0)
        for (i, j), c in self.terms.items():
            total += eval_at(c, qv) * xv**i * sv**j
        return total

    def only_parity(self, parity: int) -> bool:
        """True when every monomial has x-degree congruent to ``parity`` mod 2."""
        return all(i % 2 == parity % 2 for i, _ in self.terms)

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [{"x": i, "s": j, "coef": c.to_json()} for (i, j), c in self.items()]}

    @classmethod
    def from_json(cls, obj: dict) -> "XSPoly":
        return cls({(t["x"], t["s"]): QScalar.from_json(t["coef"]) for t in obj["terms"]})

    def __str__(self):
        return xs_text(self)

    def __repr__(self):
        return f"XSPoly({xs_text(self)!r})"

    def latex(self) -> str:
        return xs_latex(self)


XSLike = Union[XSPoly, QScalar, int, Fraction]


def _coerce(v) -> XSPoly:
    if isinstance(v, XSPoly):
        return v
    if isinstance(v, (QScalar, int, Fraction)):
        return XSPoly.const(v)
    return NotImplemented


def as_xspoly(v: XSLike) -> XSPoly:
    r = _coerce(v)
    if r is NotImplemented:
        raise TypeError(f"cannot interpret {type(v).__name__} as a polynomial in x, s")
    return r


X = XSPoly.monomial(1, 0)
S = XSPoly.monomial(0, 1)
Q = XSPoly.const(q)


# -- operators ------------------------------------------------------------

def qderiv_x(p: XSPoly) -> XSPoly:
    """q-derivative in x: x^n -> [n]_q x^(n-1)."""
    return XSPoly._new({(i - 1, j): c * qint(i) for (i, j), c in p.terms.items() if i > 0})


def deriv_x(p: XSPoly) -> XSPoly:
    return XSPoly._new({(i - 1, j): c * i for (i, j), c in p.terms.items() if i > 0})


def subst_x_scale(p: XSPoly, c: QLike) -> XSPoly:
    """x -> c*x."""
    c = as_qscalar(c)
    return XSPoly({(i, j): v * c**i for (i, j), v in p.terms.items()})


def subst_values(p: XSPoly, xv: QLike, sv: QLike) -> QScalar:
    xv, sv = as_qscalar(xv), as_qscalar(sv)
    total = ZERO
    for (i, j), c in p.terms.items():
        total = total + c * xv**i * sv**j
    return total


def operator_orbit(alpha: QLike, beta: QLike, N: int) -> list[XSPoly]:
    """[A^n . 1 for n = 0..N] with A = alpha*x + beta*s*D_q."""
    alpha, beta = as_qscalar(alpha), as_qscalar(beta)
    out = [XSPoly.const(1)]
    xa = X.scale(alpha)
    sb = S.scale(beta)
    for _ in range(N):
        p = out[-1]
        out.append(xa * p + sb * qderiv_x(p))
    return out


def apply_operator_power(alpha: QLike, beta: QLike, n: int) -> XSPoly:
    """(alpha*x + beta*s*D_q)^n applied to 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return operator_orbit(alpha, beta, n)[n]


# -- polynomials in z -----------------------------------------------------

class ZPoly:
    """Polynomial in z with XSPoly coefficients (ascending in z)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[XSLike] = ()):
        cs = [as_xspoly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c: XSLike) -> "ZPoly":
        return cls([c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> XSPoly:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return XSPoly._new({})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        o = _zcoerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return ZPoly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_zcoerce(other))

    def __rsub__(self, other):
        return _zcoerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (XSPoly, QScalar, int, Fraction)):
            o = as_xspoly(other)
            return ZPoly(c * o for c in self.coeffs)
        if not isinstance(other, ZPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [XSPoly._new({}) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "ZPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial in z")
        out = ZPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def mul_z(self) -> "ZPoly":
        if not self.coeffs:
            return self
        return ZPoly((XSPoly._new({}),) + self.coeffs)

    def eval_z(self, v: XSLike) -> XSPoly:
        v = as_xspoly(v)
        acc = XSPoly._new({})
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def map_coeffs(self, f: Callable[[XSPoly], XSPoly]) -> "ZPoly":
        return ZPoly(f(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (XSPoly, QScalar, int, Fraction)):
            other = ZPoly.const(other)
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return z_text(self)

    def __repr__(self):
        return f"ZPoly({z_text(self)!r})"


def _zcoerce(v) -> ZPoly:
    if isinstance(v, ZPoly):
        return v
    return ZPoly.const(v)


Z = ZPoly([0, 1])


# -- text and LaTeX -------------------------------------------------------

def _mono(i: int, j: int, latex: bool) -> str:
    def pw(var, e):
        if e == 0:
            return ""
        if e == 1:
            return var
        return f"{var}^{{{e}}}" if latex else f"{var}^{e}"

    return pw("s", j) + pw("x", i)


def _coef_and_sign(c: QScalar, latex: bool) -> tuple[str, str]:
    """Split a coefficient into (sign, body) where body is '' for +-1."""
    if c.is_polynomial():
        coeffs = c.numerator_coeffs()
        nz = [a for a in coeffs if a]
        if len(nz) == 1:
            sign = "-" if nz[0] < 0 else "+"
            body = (-c if sign == "-" else c)
            text = body.latex() if latex else str(body)
            return sign, ("" if text == "1" else text)
        if all(a <= 0 for a in coeffs):
            text = (-c).latex() if latex else str(-c)
            return "-", f"({text})"
        return "+", f"({c.latex() if latex else str(c)})"
    text = c.latex() if latex else str(c)
    return "+", f"({text})"


def _terms_text(terms: Sequence[tuple[Key, QScalar]], latex: bool) -> str:
    out = []
    for (i, j), c in terms:
        sign, body = _coef_and_sign(c, latex)
        mono = _mono(i, j, latex)
        if not mono and body == "":
            body = "1"
        out.append(sign + body + mono)
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def _xs_format(p: XSPoly, latex: bool) -> str:
    if p.is_zero():
        return "0"
    items = list(p.items())
    if len(items) == 1 and items[0][0] == (0, 0):
        c = items[0][1]
        return c.latex() if latex else str(c)
    xmin = min(i for (i, _), _ in items)
    if len(items) > 1 and xmin > 0:
        inner = [((i - xmin, j), c) for (i, j), c in items]
        return _mono(xmin, 0, latex) + "(" + _terms_text(inner, latex) + ")"
    return _terms_text(items, latex)


def xs_text(p: XSPoly) -> str:
    """Canonical text: ascending graded order, common power of x factored out."""
    return _xs_format(p, latex=False)


def xs_latex(p: XSPoly) -> str:
    return _xs_format(p, latex=True)


def z_text(p: ZPoly, latex: bool = False) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i in range(p.degree(), -1, -1):
        c = p.coeffs[i]
        if c.is_zero():
            continue
        zm = "" if i == 0 else ("z" if i == 1 else (f"z^{{{i}}}" if latex else f"z^{i}"))
        sign = "+"
        if all(v.is_polynomial() and all(a <= 0 for a in v.numerator_coeffs()) for _, v in c.items()):
            sign, c = "-", -c
        body = _xs_format(c, latex)
        if len(c) == 1:
            if body == "1" and zm:
                body = ""
        else:
            body = f"({body})"
        out.append(sign + body + zm)
    s = "".join(out)
    return s[1:] if s.startswith("+") else s

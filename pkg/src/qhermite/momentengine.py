"""Continued fractions, moments and Hankel determinants over Q(q)[x, s].

Index conventions (the usual source of off-by-one errors):

    ======================  =============  ==========================
    object                  first index    meaning
    ======================  =============  ==========================
    J-fraction b_n          0              1 - b_n t
    J-fraction lam_n        1              - lam_n t^2 below level n-1
    S-fraction c_n          1              1 - c_n t
    moments mu_n            0              mu_0 = 1
    Hankel size n           1              det(mu_{i+j+shift}), i,j < n
    ======================  =============  ==========================
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .mpoly import S, X, XSLike, XSPoly, as_xspoly
from .qfield import QScalar, q, qint, qpow


class DegenerateSeriesError(ArithmeticError):
    """A power series has no S-fraction expansion (a required Hankel minor vanishes)."""


# -- fraction field -------------------------------------------------------

class XSFraction:
    """num/den in the fraction field of Q(q)[x, s].

    Only the cheap part of the reduction is done: the denominator is made
    monic (lex order, x > s) and common monomial factors are removed.  No
    multivariate gcd; equality cross-multiplies.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: XSLike, den: XSLike = 1):
        num, den = as_xspoly(num), as_xspoly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = num, XSPoly.const(1)
            return
        xm = min(min(i for i, _ in num.terms), min(i for i, _ in den.terms))
        sm = min(min(j for _, j in num.terms), min(j for _, j in den.terms))
        if xm or sm:
            num = XSPoly._new({(i - xm, j - sm): c for (i, j), c in num.terms.items()})
            den = XSPoly._new({(i - xm, j - sm): c for (i, j), c in den.terms.items()})
        lc = den.terms[max(den.terms)]
        if not lc.is_one():
            inv = lc.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def to_xspoly(self) -> XSPoly:
        """Exact polynomial value; raises NotDivisibleError if there is none."""
        return self.num.divexact(self.den)

    def __add__(self, other):
        o = _fcoerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return XSFraction(self.num + o.num, self.den)
        return XSFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return XSFraction(-self.num, self.den)

    def __sub__(self, other):
        o = _fcoerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return _fcoerce(other) - self

    def __mul__(self, other):
        o = _fcoerce(other)
        if o is NotImplemented:
            return o
        return XSFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _fcoerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return XSFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return _fcoerce(other) / self

    def __eq__(self, other):
        o = _fcoerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value().is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def _fcoerce(v) -> XSFraction:
    if isinstance(v, XSFraction):
        return v
    if isinstance(v, (XSPoly, QScalar, int)):
        return XSFraction(v)
    return NotImplemented


Value = Union[XSPoly, XSFraction]


def values_equal(a: Value, b: Value) -> bool:
    if isinstance(a, XSFraction) or isinstance(b, XSFraction):
        return _fcoerce(a) == _fcoerce(b)
    return a == b


# -- coefficient sequences -------------------------------------------------

class CoeffSeq:
    """Deterministic index -> value rule, memoized."""

    def __init__(self, rule: Callable[[int], Value], name: str = "", start: int = 0):
        self._rule = rule
        self._cache: dict[int, Value] = {}
        self.name = name
        self.start = start

    @classmethod
    def explicit(cls, values: Sequence[Value], name: str = "", start: int = 0) -> "CoeffSeq":
        vals = list(values)

        def rule(n: int) -> Value:
            i = n - start
            if i < 0 or i >= len(vals):
                raise IndexError(f"{name or 'sequence'}: index {n} outside the stored range")
            return vals[i]

        seq = cls(rule, name, start)
        seq.values = vals
        return seq

    def __call__(self, n: int) -> Value:
        if n < self.start:
            raise IndexError(f"{self.name or 'sequence'}: index {n} below first index {self.start}")
        v = self._cache.get(n)
        if v is None:
            v = self._rule(n)
            if not isinstance(v, XSFraction):
                v = as_xspoly(v)
            self._cache[n] = v
        return v

    __getitem__ = __call__


@dataclass
class JSpec:
    b: CoeffSeq
    lam: CoeffSeq
    name: str = ""


@dataclass
class SSpec:
    c: CoeffSeq
    name: str = ""


Triangle = list[list[Value]]


def _zero() -> XSPoly:
    return XSPoly()


# -- Stieltjes tableau and moments ----------------------------------------

def stieltjes_table(spec: JSpec, N: int) -> Triangle:
    """a(n,k), 0 <= k <= n <= N.  Column 0 holds the moments."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    rows: Triangle = [[XSPoly.const(1)]]
    for n in range(1, N + 1):
        prev = rows[-1]

        def a(k):
            return prev[k] if 0 <= k < len(prev) else None

        row = []
        for k in range(n + 1):
            acc = _zero()
            left = a(k - 1)
            if left is not None:
                acc = acc + left
            mid = a(k)
            if mid is not None and mid:
                acc = acc + spec.b(k) * mid
            right = a(k + 1)
            if right is not None and right:
                acc = acc + spec.lam(k + 1) * right
            row.append(acc)
        rows.append(row)
    return rows


def moments(spec: JSpec, N: int) -> list[Value]:
    """mu_0 .. mu_N of the J-fraction (only the part of the tableau that feeds column 0)."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    row: list[Value] = [XSPoly.const(1)]
    mu = [row[0]]
    for n in range(1, N + 1):
        width = min(n, N - n) + 1
        new = []
        for k in range(width):
            acc = _zero()
            if 0 <= k - 1 < len(row):
                acc = acc + row[k - 1]
            if k < len(row) and row[k]:
                acc = acc + spec.b(k) * row[k]
            if k + 1 < len(row) and row[k + 1]:
                acc = acc + spec.lam(k + 1) * row[k + 1]
            new.append(acc)
        row = new
        mu.append(row[0])
    return mu


def pn_at_zero(spec: JSpec, n: int) -> Value:
    """p_n(0) for p_{n+1}(z) = (z - b_n) p_n - lam_n p_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    prev, cur = _zero(), XSPoly.const(1)
    for k in range(n):
        nxt = -(spec.b(k) * cur)
        if k >= 1:
            nxt = nxt - spec.lam(k) * prev
        prev, cur = cur, nxt
    return cur


# -- S-fractions ------------------------------------------------------------

def sfraction_table(spec: SSpec, M: int) -> Triangle:
    """A(n,k) with A(0,k) = delta_k0, A(n,0) = c_1 A(n-1,1) and
    A(n,k) = A(n-1,k-1) + c_{k+1} A(n-1,k+1).

    Row n holds only k <= min(n, M - n), the entries that can still return to
    column 0 by row M; row M = 2N then uses c_1..c_N only.
    """
    if M < 0:
        raise ValueError("M must be nonnegative")
    rows: Triangle = [[XSPoly.const(1)]]
    for n in range(1, M + 1):
        prev = rows[-1]
        row = []
        for k in range(min(n, M - n) + 1):
            acc = _zero()
            if 0 <= k - 1 < len(prev):
                acc = acc + prev[k - 1]
            if k + 1 < len(prev) and prev[k + 1]:
                acc = acc + spec.c(k + 1) * prev[k + 1]
            row.append(acc)
        rows.append(row)
    return rows


def sfraction_series(spec: SSpec, N: int) -> list[Value]:
    """Coefficients A(2n,0), n = 0..N, of 1/(1 - c_1 t/(1 - c_2 t/...)).

    The parity zeros A(2n,2k+1) = A(2n+1,2k) = 0 are checked, not assumed.
    """
    table = sfraction_table(spec, 2 * N)
    for n, row in enumerate(table):
        for k, v in enumerate(row):
            if (n - k) % 2 and v:
                raise AssertionError(f"A({n},{k}) should vanish by parity")
    return [table[2 * n][0] for n in range(N + 1)]


def contract(spec: SSpec) -> JSpec:
    """S-fraction -> J-fraction: b_0 = c_1, b_n = c_2n + c_2n+1, lam_n = c_2n c_2n-1."""
    c = spec.c

    def b(n: int) -> Value:
        return c(1) if n == 0 else c(2 * n) + c(2 * n + 1)

    def lam(n: int) -> Value:
        return c(2 * n) * c(2 * n - 1)

    name = f"contract({spec.name})" if spec.name else "contract"
    return JSpec(CoeffSeq(b, name + ".b"), CoeffSeq(lam, name + ".lam", start=1), name)


# -- Hankel determinants ---------------------------------------------------

def _hankel(mu: Sequence[XSPoly], n: int, shift: int) -> list[list[XSPoly]]:
    if len(mu) < 2 * n - 1 + shift:
        raise ValueError(f"need {2 * n - 1 + shift} moments for a size-{n} Hankel matrix, got {len(mu)}")
    return [[as_xspoly(mu[i + j + shift]) for j in range(n)] for i in range(n)]


def bareiss_det(matrix: Sequence[Sequence[XSPoly]]) -> XSPoly:
    """Fraction-free determinant; every division is exact in Q(q)[x,s]."""
    n = len(matrix)
    if n == 0:
        return XSPoly.const(1)
    a = [list(row) for row in matrix]
    sign = 1
    prev = XSPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return XSPoly()
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - aik * a[k][j]).divexact(prev)
        prev = piv
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def leading_minors(matrix: Sequence[Sequence[XSPoly]]) -> list[XSPoly]:
    """Leading principal minors D_1..D_n, read off the Bareiss pivots.

    Stops after the first vanishing minor (later ones would need pivoting).
    """
    n = len(matrix)
    a = [list(row) for row in matrix]
    prev = XSPoly.const(1)
    out = []
    for k in range(n):
        piv = a[k][k]
        out.append(piv)
        if piv.is_zero():
            break
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (piv * a[i][j] - aik * a[k][j]).divexact(prev)
        prev = piv
    return out


def hankel_det(mu: Sequence[XSPoly], n: int, shift: int = 0) -> XSPoly:
    """det(mu_{i+j+shift})_{i,j=0..n-1}."""
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    return bareiss_det(_hankel(mu, n, shift))


def sfraction_from_series(mu: Sequence[XSPoly], N: int) -> SSpec:
    """c_1..c_N with sfraction_series(result, N) == mu[:N+1].

    With H(k, m) = det(mu_{i+j+m})_{i,j<k}:
        c_{2n+1} = H(n+1,1) H(n,0) / (H(n+1,0) H(n,1))
        c_{2n}   = H(n+1,0) H(n-1,1) / (H(n,0) H(n,1))
    The minors come from fraction-free elimination, so no gcds are taken.
    A vanishing c_k terminates the fraction; the remaining series is then
    checked against the truncated expansion.
    """
    if len(mu) < N + 1:
        raise ValueError(f"need mu_0..mu_{N}")
    mu = [as_xspoly(m) for m in mu[: N + 1]]
    if mu[0] != XSPoly.const(1):
        raise DegenerateSeriesError("series must start with 1")
    n0 = N // 2 + 1
    n1 = (N + 1) // 2
    h0 = [XSPoly.const(1)] + leading_minors(_hankel(mu, n0, 0)) if N >= 0 else []
    h1 = [XSPoly.const(1)] + (leading_minors(_hankel(mu, n1, 1)) if n1 else [])

    def minor(table, k):
        if k >= len(table):
            raise DegenerateSeriesError("required Hankel minor lies beyond a vanishing one")
        return table[k]

    cs: list[Value] = []
    for idx in range(1, N + 1):
        if idx % 2:
            n = (idx - 1) // 2
            num = minor(h1, n + 1) * minor(h0, n)
            den = minor(h0, n + 1) * minor(h1, n)
        else:
            n = idx // 2
            num = minor(h0, n + 1) * minor(h1, n - 1)
            den = minor(h0, n) * minor(h1, n)
        if den.is_zero():
            raise DegenerateSeriesError(f"c_{idx}: vanishing Hankel minor in the denominator")
        c = XSFraction(num, den)
        if c.is_polynomial():
            cs.append(c.to_xspoly())
        else:
            cs.append(c)
        if c.is_zero():
            break
    if len(cs) < N:
        # terminating fraction
        cs.extend(XSPoly() for _ in range(N - len(cs)))
        spec = SSpec(CoeffSeq.explicit(cs, "extracted.c", start=1), "extracted")
        got = sfraction_series(spec, N)
        if not all(values_equal(g, m) for g, m in zip(got, mu)):
            raise DegenerateSeriesError("series has no S-fraction expansion")
        return spec
    return SSpec(CoeffSeq.explicit(cs, "extracted.c", start=1), "extracted")


# -- named specs -----------------------------------------------------------

def _jspec(name: str, b: Callable[[int], XSLike], lam: Callable[[int], XSLike]) -> JSpec:
    return JSpec(CoeffSeq(b, name + ".b"), CoeffSeq(lam, name + ".lam", start=1), name)


def jspec_newH() -> JSpec:
    return _jspec("newH", lambda n: X.scale(qpow(n)), lambda n: -S.scale(qint(n)))


def jspec_contH() -> JSpec:
    return _jspec("contH", lambda n: X.scale(qpow(n)), lambda n: -S.scale(qpow(n - 1) * qint(n)))


def jspec_h() -> JSpec:
    def b(n):
        return X.scale(qpow(n - 1) * (qpow(n) + qpow(n + 1) - 1))

    def lam(n):
        return -(S + X * X * (qpow(2 * n - 2) * (1 - q))).scale(qpow(n - 1) * qint(n))

    return _jspec("h", b, lam)


def jspec_T() -> JSpec:
    return _jspec("T", lambda n: X.scale(qpow(n)), lambda n: S.scale(1 - qpow(n)))


def jspec_w(m: int) -> JSpec:
    e = 2 * m + 1

    def b(n):
        return qpow(e * n - m) * (qpow(e * n) - 1) + qpow(e * (2 * n + 1) - m)

    def lam(n):
        return qpow(e * (3 * n - 1) - 2 * m) * (qpow(e * n) - 1)

    return _jspec(f"w{m}", b, lam)


def jspec_classical() -> JSpec:
    return _jspec("classical", lambda n: X, lambda n: -S * n)


def jspec_crossing() -> JSpec:
    return _jspec("crossing", lambda n: 0, lambda n: qint(n))


def sspec_w(m: int) -> SSpec:
    e = 2 * m + 1

    def c(k):
        n, odd = divmod(k, 2)
        if odd:
            return qpow(e * (2 * n + 1) - m)
        return qpow(e * n - m) * (qpow(e * n) - 1)

    return SSpec(CoeffSeq(c, f"w{m}.c", start=1), f"w{m}")


def sspec_T(l_table: Sequence[XSPoly]) -> SSpec:
    """S-coefficients as ratios of L_n = h_n(x,(1-q)s;q): needs L_0..L_K."""

    def c(k):
        n, odd = divmod(k, 2)
        if odd:
            return XSFraction(l_table[n + 1], l_table[n])
        return XSFraction(S.scale(1 - qpow(n)) * l_table[n - 1], l_table[n])

    return SSpec(CoeffSeq(c, "T.c", start=1), "T")


def sspec_constant(value: XSLike = 1) -> SSpec:
    v = as_xspoly(value)
    return SSpec(CoeffSeq(lambda k: v, "const.c", start=1), "const")


JSPECS: dict[str, Callable[[], JSpec]] = {
    "newH": jspec_newH,
    "contH": jspec_contH,
    "h": jspec_h,
    "T": jspec_T,
    "w0": lambda: jspec_w(0),
    "w1": lambda: jspec_w(1),
    "w2": lambda: jspec_w(2),
    "w3": lambda: jspec_w(3),
    "classical": jspec_classical,
    "crossing": jspec_crossing,
}


def named_jspec(name: str) -> JSpec:
    if name.startswith("w") and name[1:].isdigit():
        return jspec_w(int(name[1:]))
    try:
        return JSPECS[name]()
    except KeyError:
        raise KeyError(f"unknown spec {name!r}; valid names: {', '.join(JSPECS)}") from None


def hankel_product(spec: JSpec, n: int) -> Value:
    """prod_{i=1}^{n-1} prod_{k=1}^{i} lam_k."""
    out: Value = XSPoly.const(1)
    for i in range(1, n):
        for k in range(1, i + 1):
            out = out * spec.lam(k)
    return out

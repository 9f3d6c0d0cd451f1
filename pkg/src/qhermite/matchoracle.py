"""Brute-force ground truth on matchings of [n] = {1, ..., n}.

For a matching m: ed(m) is the number of edges, cr(m) the number of crossing
pairs (i < k < j < l), and c(m) sums, over unmatched vertices a, the number of
edges (i, j) with i < a < j.  The generating polynomials

    c(n, k, q) = sum over matchings with k unmatched vertices of q^(c(m) + cr(m))

are assembled both by enumeration and by the recurrence
c(n,k) = c(n-1,k-1) + [k+1]_q c(n-1,k+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from flint import fmpz_poly

from .families import cont_qhermite
from .qfield import ONE, QScalar, ZERO, qint

MAX_ENUM_N = 14


class OracleCapError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for i, j in self.edges:
            if not 1 <= i < j <= self.n:
                raise ValueError(f"bad edge {(i, j)} for n={self.n}")
            if i in seen or j in seen:
                raise ValueError("edges are not disjoint")
            seen.update((i, j))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be sorted by first coordinate")

    @property
    def ed(self) -> int:
        return len(self.edges)

    def unmatched(self) -> list[int]:
        used = {v for e in self.edges for v in e}
        return [a for a in range(1, self.n + 1) if a not in used]


@dataclass(frozen=True)
class StatTriple:
    ed: int
    cr: int
    c: int


def _check_cap(n: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ENUM_N:
        raise OracleCapError(f"enumeration is capped at n <= {MAX_ENUM_N}, got n={n}")


def _edge_lists(avail: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    # recursion on the largest available vertex: unmatched, or paired with some j below it
    if not avail:
        yield ()
        return
    top, rest = avail[-1], avail[:-1]
    yield from _edge_lists(rest)
    for idx, j in enumerate(rest):
        for edges in _edge_lists(rest[:idx] + rest[idx + 1:]):
            yield edges + ((j, top),)


def enumerate_matchings(n: int) -> Iterator[Matching]:
    """Every matching of [n] (partial ones included), each exactly once."""
    _check_cap(n)
    for edges in _edge_lists(tuple(range(1, n + 1))):
        yield Matching(n, tuple(sorted(edges)))


def stats(m: Matching) -> StatTriple:
    edges = m.edges
    cr = 0
    for a in range(len(edges)):
        i, j = edges[a]
        for b in range(a + 1, len(edges)):
            k, l = edges[b]
            # edges sorted by first coordinate, so i < k
            if k < j < l:
                cr += 1
    c = 0
    for a in m.unmatched():
        for i, j in edges:
            if i < a < j:
                c += 1
    return StatTriple(len(edges), cr, c)


def _as_table(counts: dict[int, list[int]]) -> dict[int, QScalar]:
    return {k: QScalar(fmpz_poly(v)) for k, v in sorted(counts.items())}


@lru_cache(maxsize=None)
def _c_table_brute(n: int) -> tuple[tuple[int, QScalar], ...]:
    counts: dict[int, list[int]] = {}
    for m in enumerate_matchings(n):
        st = stats(m)
        k = n - 2 * st.ed
        e = st.c + st.cr
        row = counts.setdefault(k, [])
        if len(row) <= e:
            row.extend([0] * (e + 1 - len(row)))
        row[e] += 1
    return tuple(_as_table(counts).items())


def c_table(n: int) -> dict[int, QScalar]:
    """c(n, k, q) by enumeration; keys are the k with k = n mod 2."""
    _check_cap(n)
    return dict(_c_table_brute(n))


@lru_cache(maxsize=None)
def _c_rec(n: int, k: int) -> QScalar:
    if k < 0 or k > n or (n - k) % 2:
        return ZERO
    if n == 0:
        return ONE
    if k == 0:
        return _c_rec(n - 1, 1)
    return _c_rec(n - 1, k - 1) + qint(k + 1) * _c_rec(n - 1, k + 1)


def c_table_recurrence(n: int) -> dict[int, QScalar]:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return {k: _c_rec(n, k) for k in range(n % 2, n + 1, 2)}


def c_value(n: int, k: int) -> QScalar:
    """c(n, k, q) from the recurrence; zero outside the triangle."""
    return _c_rec(n, k)


def b_table(n: int) -> dict[int, QScalar]:
    """b(n, k, q) with cont. q-Hermite = sum_k b(n,k,q) x^k (-s)^((n-k)/2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    h = cont_qhermite(n)[n]
    out = {}
    for k in range(n % 2, n + 1, 2):
        e = (n - k) // 2
        out[k] = h.coeff(k, e) * (-1) ** e
    return out

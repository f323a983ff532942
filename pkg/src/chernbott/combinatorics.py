"""Labeled forests, Eulerian digraphs, and the dimension conjectures.

``forest_count`` conditions on the tree that contains the last vertex:
choosing its ``m - 1`` companions and one of Cayley's ``m^(m-2)`` trees
gives ``f(n) = sum_m C(n-1, m-1) m^(m-2) f(n-m)`` with ``f(0) = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from .edge_algebra import edges
from .errors import ArgumentError, ResourceError
from .linalg import hilbert_series_rank

MAX_FOREST_BRUTE_N = 6
MAX_EULERIAN_BRUTE_N = 5


def cayley(m: int) -> int:
    """Number of labeled trees on ``m`` vertices."""
    if m < 1:
        raise ArgumentError("a tree needs at least one vertex")
    return 1 if m <= 2 else m ** (m - 2)


@lru_cache(maxsize=None)
def forest_count(n: int) -> int:
    if n < 0:
        raise ArgumentError(f"n must be >= 0, got {n}")
    if n == 0:
        return 1
    return sum(comb(n - 1, m - 1) * cayley(m) * forest_count(n - m) for m in range(1, n + 1))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def forest_count_bruteforce(n: int) -> int:
    """Count acyclic edge subsets of ``K_n`` with union-find."""
    if n < 0:
        raise ArgumentError(f"n must be >= 0, got {n}")
    if n > MAX_FOREST_BRUTE_N:
        raise ResourceError(f"brute-force forest count is capped at n={MAX_FOREST_BRUTE_N}")
    es = [(i - 1, j - 1) for i, j in edges(n)] if n >= 2 else []
    count = 0
    for mask in range(1 << len(es)):
        parent = list(range(n))
        for b, (u, v) in enumerate(es):
            if mask >> b & 1:
                ru, rv = _find(parent, u), _find(parent, v)
                if ru == rv:
                    break
                parent[ru] = rv
        else:
            count += 1
    return count


def eulerian_bruteforce(n: int) -> int:
    """Count loop-free digraphs (at most one arc per ordered pair) with
    indegree = outdegree everywhere, the empty digraph included.

    All ``2^(n(n-1))`` arc subsets are scanned at once with numpy.
    """
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    if n > MAX_EULERIAN_BRUTE_N:
        raise ResourceError(f"brute-force Eulerian count is capped at n={MAX_EULERIAN_BRUTE_N}")
    arcs = [(u, v) for u in range(n) for v in range(n) if u != v]
    masks = np.arange(1 << len(arcs), dtype=np.int64)
    balance = np.zeros((n, masks.size), dtype=np.int8)
    for b, (u, v) in enumerate(arcs):
        bit = ((masks >> b) & 1).astype(np.int8)
        balance[u] += bit
        balance[v] -= bit
    return int(np.count_nonzero(~balance.any(axis=0)))


# -- conjecture checks ------------------------------------------------------------

def finite_differences(values: Sequence[int]) -> list[list[int]]:
    """Rows 0..len-1 of the forward-difference table."""
    table = [list(values)]
    while len(table[-1]) > 1:
        prev = table[-1]
        table.append([b - a for a, b in zip(prev, prev[1:])])
    return table


@dataclass
class TotalRecord:
    n: int
    total_dim: int
    forest_count: int
    series: list[int]

    @property
    def match(self) -> bool:
        return self.total_dim == self.forest_count


@dataclass
class PolynomialRecord:
    k: int
    ns: list[int]
    dims: list[int]
    differences: list[list[int]]

    @property
    def is_monic_degree_k(self) -> bool:
        kth = self.differences[self.k]
        return len(kth) >= 2 and all(v == factorial(self.k) for v in kth)


@dataclass
class ConjectureReport:
    totals: list[TotalRecord] = field(default_factory=list)
    polynomial: list[PolynomialRecord] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (all(r.match for r in self.totals)
                and all(r.is_monic_degree_k for r in self.polynomial))


SeriesFn = Callable[[int, int], Sequence[int]]


def _default_series(k: int, n: int, **kwargs) -> list[int]:
    return hilbert_series_rank(k, n, **kwargs)


def verify_conjecture_total(n_max: int, *, n_min: int = 2, long_run: bool = False,
                            series_fn: SeriesFn | None = None, **rank_kwargs) -> ConjectureReport:
    """Compare ``dim A_n`` with the number of labeled forests for ``n_min..n_max``."""
    cap = 7 if long_run else 6
    if n_max > cap:
        raise ResourceError(f"n_max={n_max} exceeds {cap}" + ("" if long_run else "; use long_run"))
    if n_min < 1 or n_min > n_max:
        raise ArgumentError(f"empty range {n_min}..{n_max}")
    series_fn = series_fn or (lambda k, n: _default_series(k, n, allow_large=True, **rank_kwargs))
    report = ConjectureReport()
    for n in range(n_min, n_max + 1):
        s = list(series_fn(n, n))
        report.totals.append(TotalRecord(n, sum(s), forest_count(n), s))
    return report


def verify_conjecture_polynomial(k: int, ns: Sequence[int], *,
                                 series_fn: SeriesFn | None = None,
                                 **rank_kwargs) -> ConjectureReport:
    """Check that ``n -> dim A_{k,n}`` has constant k-th difference ``k!``."""
    ns = list(ns)
    if k < 1:
        raise ArgumentError(f"k must be >= 1, got {k}")
    if len(ns) < k + 2:
        raise ArgumentError(f"need at least k+2={k + 2} values of n, got {len(ns)}")
    if any(b - a != 1 for a, b in zip(ns, ns[1:])):
        raise ArgumentError("n values must be consecutive")
    if ns[0] < k:
        raise ArgumentError(f"n values must be >= k={k}, got {ns[0]}")
    series_fn = series_fn or (lambda kk, n: _default_series(kk, n, allow_large=True, **rank_kwargs))
    dims = [sum(series_fn(k, n)) for n in ns]
    return ConjectureReport(polynomial=[PolynomialRecord(k, ns, dims, finite_differences(dims))])

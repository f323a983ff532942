"""Evaluation matrices and exact rank.

For a degree ``d`` the evaluation matrix has one row per monomial
``x^alpha`` of degree ``d`` in ``k`` variables and one column per
``d``-element edge set of ``K_n``; entry ``(alpha, S)`` is the coefficient
of ``gamma_S`` in ``prod_t w_{subset[t]}^{alpha_t}``.  Its rank is the
dimension of the degree-``d`` part of the algebra generated by the chosen
curvature forms.

Ranks are computed modulo two random primes in ``[2^30, 2^31)``; if they
disagree (or on request) a fraction-free elimination over the integers
decides.
"""
from __future__ import annotations

import logging
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from pathlib import Path
from typing import Sequence

import numpy as np

from .edge_algebra import (GammaPolynomial, _curvature_form, check_ambient,
                           edges, multiply)
from .errors import ArgumentError, ResourceError
from .polynomial import monomials_of_degree

log = logging.getLogger(__name__)

#: Default bound on rows * columns of a single evaluation matrix.
MAX_ENTRIES = 4 * 10**9

PRIME_LOW, PRIME_HIGH = 2**30, 2**31

CACHE_ENV = "CHERNBOTT_CACHE_DIR"


@dataclass
class SparseExactMatrix:
    """Rows are exponent vectors, columns edge-set bitmasks; ``entries[r]`` maps
    column position to a nonzero integer."""

    rows: list[tuple[int, ...]]
    columns: list[int]
    entries: list[dict[int, int]] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def nnz(self) -> int:
        return sum(len(r) for r in self.entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * len(self.columns) for _ in self.rows]
        for r, row in enumerate(self.entries):
            for c, v in row.items():
                out[r][c] = v
        return out

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "SparseExactMatrix":
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        entries = [{c: int(v) for c, v in enumerate(row) if v} for row in data]
        return cls([(r,) for r in range(nrows)], list(range(ncols)), entries)


def subset_columns(nedges: int, d: int) -> list[int]:
    """All ``d``-element subsets of ``nedges`` bits as increasing bitmasks."""
    masks = [sum(1 << b for b in c) for c in combinations(range(nedges), d)]
    masks.sort()
    return masks


class MonomialImages:
    """Memoized ``x^alpha -> GammaPolynomial`` for a fixed ``(n, subset)``.

    Each image is computed from the image of ``alpha`` with its last nonzero
    exponent lowered by one, so a whole degree costs one multiplication by a
    curvature form per monomial.
    """

    def __init__(self, n: int, subset: Sequence[int]):
        self.n = n
        self.subset = tuple(subset)
        self.forms = [_curvature_form(i, n) for i in subset]
        self._cache: dict[tuple[int, ...], GammaPolynomial] = {
            (0,) * len(subset): GammaPolynomial.one(n)}

    def __call__(self, alpha: tuple[int, ...]) -> GammaPolynomial:
        hit = self._cache.get(alpha)
        if hit is not None:
            return hit
        t = max(s for s, e in enumerate(alpha) if e)
        prev = alpha[:t] + (alpha[t] - 1,) + alpha[t + 1:]
        val = multiply(self(prev), self.forms[t])
        self._cache[alpha] = val
        return val

    def drop_below(self, d: int) -> None:
        """Forget cached images of degree < d (keeps memory flat across degrees)."""
        self._cache = {a: v for a, v in self._cache.items() if sum(a) >= d or not any(a)}


def _validate(k: int, n: int, subset: Sequence[int] | None, allow_large: bool) -> tuple[int, ...]:
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    check_ambient(n, allow_large)
    if subset is None:
        subset = tuple(range(1, k + 1))
    subset = tuple(int(i) for i in subset)
    if len(subset) != k:
        raise ArgumentError(f"subset {subset} does not have k={k} elements")
    if len(set(subset)) != k or not all(1 <= i <= n for i in subset):
        raise ArgumentError(f"subset {subset} must be {k} distinct indices in 1..{n}")
    return subset


def build_matrix(k: int, n: int, d: int, subset: Sequence[int] | None = None, *,
                 max_entries: int = MAX_ENTRIES, allow_large: bool = False,
                 images: MonomialImages | None = None,
                 cache_dir: str | os.PathLike | None = None) -> SparseExactMatrix:
    """Degree-``d`` evaluation matrix of the forms ``w_i, i in subset``."""
    if d < 0:
        raise ArgumentError(f"degree must be >= 0, got {d}")
    subset = _validate(k, n, subset, allow_large)
    nedges = len(edges(n))
    nrows, ncols = comb(k - 1 + d, d), comb(nedges, d)
    if nrows * ncols > max_entries:
        raise ResourceError(f"degree-{d} matrix is {nrows} x {ncols}, over the cap {max_entries}")
    cache = MatrixCache.resolve(cache_dir)
    if cache is not None:
        hit = cache.load(k, n, d, subset)
        if hit is not None:
            return hit
    rows = monomials_of_degree(k, d)
    columns = subset_columns(nedges, d)
    position = {m: c for c, m in enumerate(columns)}
    if images is None:
        images = MonomialImages(n, subset)
    entries = []
    for alpha in rows:
        img = images(alpha) if d <= nedges else GammaPolynomial.zero(n)
        entries.append({position[m]: int(v) for m, v in img.terms.items()})
    mat = SparseExactMatrix(rows, columns, entries)
    if cache is not None:
        cache.save(k, n, d, subset, mat)
    return mat


# -- rank -----------------------------------------------------------------

def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, seed: int, low: int = PRIME_LOW, high: int = PRIME_HIGH) -> list[int]:
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < count:
        p = rng.randrange(low, high) | 1
        if is_prime(p) and p not in out:
            out.append(p)
    return out


def _markowitz_order(entries: list[dict[int, int]]) -> tuple[list[int], dict[int, int]]:
    """Static Markowitz ordering: sparse rows first, pivot columns by count."""
    colcount: dict[int, int] = {}
    for row in entries:
        for c in row:
            colcount[c] = colcount.get(c, 0) + 1
    rank_of_col = {c: r for r, c in enumerate(sorted(colcount, key=lambda c: (colcount[c], c)))}
    order = sorted(range(len(entries)), key=lambda r: (len(entries[r]), r))
    return order, rank_of_col


def _rank_sparse_mod_p(entries: list[dict[int, int]], p: int) -> int:
    order, col_rank = _markowitz_order(entries)
    pivots: dict[int, dict[int, int]] = {}  # pivot column -> row normalized to 1
    for r in order:
        row = {c: v % p for c, v in entries[r].items() if v % p}
        while row:
            lead = min(row, key=col_rank.__getitem__)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in row.items()}
                break
            f = row[lead]
            for c, v in prow.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def _rank_dense_mod_p(entries: list[dict[int, int]], ncols: int, p: int) -> int:
    """Dense elimination in int64; entries stay below p < 2^31 so products fit."""
    m = len(entries)
    A = np.zeros((m, ncols), dtype=np.int64)
    for r, row in enumerate(entries):
        for c, v in row.items():
            A[r, c] = v % p
    # drop empty columns, then eliminate on the narrower side
    A = A[:, A.any(axis=0)]
    if A.shape[0] > A.shape[1]:
        A = np.ascontiguousarray(A.T)
    rank = 0
    nrows, ncols = A.shape
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(A[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        inv = pow(int(A[rank, c]), -1, p)
        A[rank, c:] = A[rank, c:] * inv % p
        below = rank + 1 + np.flatnonzero(A[rank + 1:, c])
        if below.size:
            f = A[below, c][:, None]
            A[below, c:] = (A[below, c:] - f * A[rank, c:] % p) % p
        rank += 1
    return rank


def rank_mod_p(M: SparseExactMatrix, p: int) -> int:
    """Rank over GF(p).  Sparse elimination for sparse inputs, dense numpy otherwise."""
    if not is_prime(p):
        raise ArgumentError(f"{p} is not prime")
    if p >= 2**31:
        # dense int64 path would overflow
        return _rank_sparse_mod_p(M.entries, p)
    nrows, ncols = M.shape
    if not nrows or not ncols:
        return 0
    density = M.nnz() / (nrows * ncols)
    if density > 0.05 and min(nrows, ncols) > 40:
        return _rank_dense_mod_p(M.entries, ncols, p)
    return _rank_sparse_mod_p(M.entries, p)


def _content(row: dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def rank_exact(M: SparseExactMatrix) -> int:
    """Rank over Q by fraction-free sparse elimination with content removal."""
    order, col_rank = _markowitz_order(M.entries)
    pivots: dict[int, dict[int, int]] = {}
    for r in order:
        row = dict(M.entries[r])
        while row:
            lead = min(row, key=col_rank.__getitem__)
            prow = pivots.get(lead)
            if prow is None:
                g = _content(row)
                pivots[lead] = {c: v // g for c, v in row.items()}
                break
            a, b = prow[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: a * v for c, v in row.items()}
            for c, v in prow.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = _content(new)
            row = {c: v // g for c, v in new.items()} if g > 1 else new
    return len(pivots)


@dataclass
class RankReport:
    rank: int
    primes: list[int]
    modular_ranks: list[int]
    exact_used: bool


def certified_rank(M: SparseExactMatrix, primes: Sequence[int], exact: bool = False) -> RankReport:
    """Modular ranks at each prime; exact elimination on disagreement or request."""
    ranks = [rank_mod_p(M, p) for p in primes]
    if exact or len(set(ranks)) > 1:
        if len(set(ranks)) > 1:
            log.warning("modular ranks disagree %s for primes %s; escalating", ranks, list(primes))
        return RankReport(rank_exact(M), list(primes), ranks, True)
    return RankReport(ranks[0], list(primes), ranks, False)


# -- Hilbert series ---------------------------------------------------------

@dataclass
class RankSeries:
    series: list[int]
    primes: list[int]
    exact_fallback: bool
    degrees_checked: int

    @property
    def total(self) -> int:
        return sum(self.series)


def _degree_rank(args):
    k, n, d, subset, primes, exact, max_entries, allow_large, cache_dir = args
    M = build_matrix(k, n, d, subset, max_entries=max_entries,
                     allow_large=allow_large, cache_dir=cache_dir)
    return certified_rank(M, primes, exact)


def hilbert_series_rank(k: int, n: int, subset: Sequence[int] | None = None, *,
                        seed: int = 0, exact: bool = False, verify: bool = False,
                        threads: int = 1, max_entries: int = MAX_ENTRIES,
                        allow_large: bool = False,
                        cache_dir: str | os.PathLike | None = None,
                        details: bool = False):
    """Hilbert series of the algebra generated by ``w_i, i in subset``.

    Degrees are scanned upward until the first zero rank; with
    ``verify=True`` one more degree is computed and must also vanish.
    Returns the list of dimensions, or a :class:`RankSeries` when
    ``details`` is set.
    """
    subset = _validate(k, n, subset, allow_large)
    primes = random_primes(2, seed)
    nedges = len(edges(n))
    series: list[int] = []
    fallback = False
    checked = 0
    if threads > 1 and cache_dir is None:
        # degrees are independent; dispatch them all, stop at the first zero
        jobs = [(k, n, d, subset, primes, exact, max_entries, allow_large, None)
                for d in range(nedges + 2)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_degree_rank, jobs))
        for rep in reports:
            checked += 1
            fallback |= rep.exact_used
            if rep.rank == 0:
                break
            series.append(rep.rank)
        if verify and any(r.rank for r in reports[len(series):]):
            raise ArithmeticError("nonzero component above the first vanishing degree")
    else:
        images = MonomialImages(n, subset)
        d = 0
        while True:
            if d > nedges:
                rank = 0
            else:
                M = build_matrix(k, n, d, subset, max_entries=max_entries,
                                 allow_large=allow_large, images=images, cache_dir=cache_dir)
                rep = certified_rank(M, primes, exact)
                fallback |= rep.exact_used
                rank = rep.rank
                images.drop_below(d)
            checked += 1
            if rank == 0:
                break
            series.append(rank)
            d += 1
        if verify and d + 1 <= nedges:
            M = build_matrix(k, n, d + 1, subset, max_entries=max_entries,
                             allow_large=allow_large, images=images, cache_dir=cache_dir)
            checked += 1
            if rank_exact(M):
                raise ArithmeticError(f"degree {d + 1} is nonzero although degree {d} vanishes")
    if details:
        return RankSeries(series, primes, fallback, checked)
    return series


# -- on-disk matrix cache -----------------------------------------------------

class MatrixCache:
    """One text file per ``(k, n, d, subset)``.

    Header line ``"k n d i,j,..."`` followed by one line per nonzero entry
    ``"row_index column_bitmask coefficient"``.
    """

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    @classmethod
    def resolve(cls, cache_dir) -> "MatrixCache | None":
        if cache_dir is None:
            cache_dir = os.environ.get(CACHE_ENV)
        return cls(cache_dir) if cache_dir else None

    def path(self, k: int, n: int, d: int, subset: Sequence[int]) -> Path:
        return self.root / f"k{k}_n{n}_d{d}_s{'-'.join(map(str, subset))}.txt"

    def save(self, k, n, d, subset, M: SparseExactMatrix) -> Path:
        lines = [f"{k} {n} {d} {','.join(map(str, subset))}"]
        for r, row in enumerate(M.entries):
            for c in sorted(row):
                lines.append(f"{r} {M.columns[c]} {row[c]}")
        path = self.path(k, n, d, subset)
        tmp = path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)
        return path

    def load(self, k, n, d, subset) -> SparseExactMatrix | None:
        path = self.path(k, n, d, subset)
        if not path.exists():
            return None
        text = path.read_text().splitlines()
        header = f"{k} {n} {d} {','.join(map(str, subset))}"
        if not text or text[0].strip() != header:
            log.warning("ignoring cache file %s with unexpected header", path)
            return None
        rows = monomials_of_degree(k, d)
        columns = subset_columns(len(edges(n)), d)
        position = {m: c for c, m in enumerate(columns)}
        entries: list[dict[int, int]] = [{} for _ in rows]
        for line in text[1:]:
            if line.strip():
                r, mask, v = (int(x) for x in line.split())
                entries[r][position[mask]] = v
        return SparseExactMatrix(rows, columns, entries)

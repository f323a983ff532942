"""Exterior algebra on the one-forms ``a_{i,j}``, ``abar_{i,j}`` of SL_n/B.

Generators are indexed by ``2 * edge_bit + kind`` with ``kind = 0`` for
``a_{i,j}`` and ``1`` for ``abar_{i,j}``, which is the canonical order
(sort by edge, then kind).  The torus acts on ``a_{i,j}`` with weight
``lambda_i - lambda_j`` and on ``abar_{i,j}`` with the opposite weight, so a
monomial is invariant iff its weights sum to zero.  Reading ``a_{i,j}`` as
the arc ``i -> j`` and ``abar_{i,j}`` as ``j -> i`` turns a generator subset
into a loop-free digraph whose weight at vertex v is ``outdeg - indeg``;
invariant monomials are exactly the Eulerian digraphs.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .edge_algebra import edge_bit, edges
from .errors import ArgumentError, InvariantError, ResourceError

PLAIN, CONJ = 0, 1

#: Default cap for the invariant-form enumeration (2*C(5,2) = 20 generators).
MAX_INVARIANT_N = 5


@dataclass(frozen=True, order=True)
class OneForm:
    i: int
    j: int
    kind: int = PLAIN

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ArgumentError(f"invalid edge ({self.i},{self.j})")
        if self.kind not in (PLAIN, CONJ):
            raise ArgumentError(f"kind must be 0 (a) or 1 (abar), got {self.kind}")

    def index(self, n: int) -> int:
        return 2 * edge_bit(self.i, self.j, n) + self.kind

    def __str__(self) -> str:
        return f"{'a' if self.kind == PLAIN else 'abar'}({self.i},{self.j})"


def a(i: int, j: int) -> OneForm:
    return OneForm(i, j, PLAIN)


def abar(i: int, j: int) -> OneForm:
    return OneForm(i, j, CONJ)


def generator(index: int, n: int) -> OneForm:
    i, j = edges(n)[index // 2]
    return OneForm(i, j, index % 2)


@dataclass(frozen=True)
class Multiweight:
    """Torus weight in the lambda basis (one entry per vertex)."""

    lam: tuple[int, ...]

    @property
    def alpha(self) -> tuple[int, ...]:
        """Coordinates in the simple roots ``alpha_t = lambda_t - lambda_{t+1}``."""
        out, running = [], 0
        for t in range(len(self.lam) - 1):
            running += self.lam[t]
            out.append(running)
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(self.lam)

    def __add__(self, other: "Multiweight") -> "Multiweight":
        return Multiweight(tuple(x + y for x, y in zip(self.lam, other.lam)))


def generator_weight(g: OneForm, n: int) -> Multiweight:
    lam = [0] * n
    s = 1 if g.kind == PLAIN else -1
    lam[g.i - 1] += s
    lam[g.j - 1] -= s
    return Multiweight(tuple(lam))


@dataclass(frozen=True)
class ExteriorMonomial:
    """``sign * g_1 ^ g_2 ^ ...`` with generator indices strictly increasing."""

    n: int
    gens: tuple[int, ...]
    sign: int = 1

    @classmethod
    def from_forms(cls, forms, n: int) -> "ExteriorMonomial":
        """Wedge the given one-forms in the order listed, then canonicalize."""
        idx = [f.index(n) for f in forms]
        if len(set(idx)) != len(idx):
            return None
        return cls(n, *_sort_with_sign(idx))

    def forms(self) -> list[OneForm]:
        return [generator(g, self.n) for g in self.gens]

    @property
    def degree(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        body = " ^ ".join(str(f) for f in self.forms()) or "1"
        return body if self.sign > 0 else f"-{body}"


def _sort_with_sign(idx: list[int]) -> tuple[tuple[int, ...], int]:
    inversions = sum(1 for x in range(len(idx)) for y in range(x + 1, len(idx)) if idx[x] > idx[y])
    return tuple(sorted(idx)), -1 if inversions % 2 else 1


def wedge(m1: ExteriorMonomial | None, m2: ExteriorMonomial | None) -> ExteriorMonomial | None:
    """Exterior product; ``None`` stands for zero."""
    if m1 is None or m2 is None:
        return None
    if m1.n != m2.n:
        raise ArgumentError(f"ambient mismatch: n={m1.n} vs n={m2.n}")
    if set(m1.gens) & set(m2.gens):
        return None
    # sign of merging two sorted runs = parity of cross inversions
    crossings = 0
    j = 0
    for g in m1.gens:
        while j < len(m2.gens) and m2.gens[j] < g:
            j += 1
        crossings += j
    sign = m1.sign * m2.sign * (-1 if crossings % 2 else 1)
    return ExteriorMonomial(m1.n, tuple(sorted(m1.gens + m2.gens)), sign)


def gamma_embed(i: int, j: int, n: int) -> ExteriorMonomial:
    """``gamma_{i,j} = a_{i,j} ^ abar_{i,j}``."""
    return ExteriorMonomial.from_forms([a(i, j), abar(i, j)], n)


def multiweight_of(m: ExteriorMonomial) -> Multiweight:
    lam = [0] * m.n
    for g in m.gens:
        i, j = edges(m.n)[g // 2]
        s = -1 if g & 1 else 1
        lam[i - 1] += s
        lam[j - 1] -= s
    return Multiweight(tuple(lam))


def monomial_to_digraph(m: ExteriorMonomial) -> frozenset[tuple[int, int]]:
    """Arcs ``(tail, head)``: ``a_{i,j}`` gives ``i -> j``, ``abar_{i,j}`` gives ``j -> i``."""
    arcs = set()
    for g in m.gens:
        i, j = edges(m.n)[g // 2]
        arcs.add((j, i) if g & 1 else (i, j))
    return frozenset(arcs)


def digraph_to_monomial(arcs, n: int) -> ExteriorMonomial:
    gens = []
    for tail, head in arcs:
        if tail == head:
            raise ArgumentError("loops are not allowed")
        if tail < head:
            gens.append(2 * edge_bit(tail, head, n))
        else:
            gens.append(2 * edge_bit(head, tail, n) + 1)
    if len(set(gens)) != len(gens):
        raise ArgumentError("duplicate arcs")
    return ExteriorMonomial(n, tuple(sorted(gens)), 1)


def is_eulerian(arcs, n: int) -> bool:
    balance = [0] * (n + 1)
    for tail, head in arcs:
        balance[tail] += 1
        balance[head] -= 1
    return not any(balance)


def invariant_forms_hilbert(n: int, allow_large: bool = False) -> list[int]:
    """Number of zero-weight generator subsets, by degree ``0 .. 2*C(n,2)``.

    Dynamic programme over the edges: the state is the partial weight
    vector, and a vertex whose last incident edge has been processed must
    already be balanced (states violating that are dropped).
    """
    if n < 1:
        raise ArgumentError(f"n must be >= 1, got {n}")
    if n > MAX_INVARIANT_N and not allow_large:
        raise ResourceError(f"n={n} exceeds the invariant-form cap {MAX_INVARIANT_N}")
    es = edges(n)
    last_use = {}
    for pos, (i, j) in enumerate(es):
        last_use[i] = pos
        last_use[j] = pos
    top = 2 * len(es)
    states: dict[tuple[int, ...], list[int]] = {(0,) * n: [1] + [0] * top}
    for pos, (i, j) in enumerate(es):
        closing = [v for v in (i, j) if last_use[v] == pos]
        nxt: dict[tuple[int, ...], list[int]] = {}
        for lam, counts in states.items():
            # choices for this edge: none, a, abar, both (a ^ abar keeps weight)
            for delta, extra in ((0, 0), (1, 1), (-1, 1), (0, 2)):
                new = list(lam)
                new[i - 1] += delta
                new[j - 1] -= delta
                if any(new[v - 1] for v in closing):
                    continue
                key = tuple(new)
                row = nxt.get(key)
                if row is None:
                    row = nxt[key] = [0] * (top + 1)
                for d, c in enumerate(counts):
                    if c:
                        row[d + extra] += c
        states = nxt
    return states.get((0,) * n, [0] * (top + 1))


def invariant_forms_hilbert_enumerate(n: int) -> list[int]:
    """Reference count by scanning all generator subsets (n <= 4)."""
    if n > 4:
        raise ResourceError("direct subset scan is limited to n <= 4")
    ngen = 2 * comb(n, 2)
    weights = [generator_weight(generator(g, n), n).lam for g in range(ngen)]
    counts = [0] * (ngen + 1)
    for mask in range(1 << ngen):
        lam = [0] * n
        for g in range(ngen):
            if mask >> g & 1:
                for v in range(n):
                    lam[v] += weights[g][v]
        if not any(lam):
            counts[mask.bit_count()] += 1
    return counts


@dataclass(frozen=True)
class EulerianReport:
    n: int
    Z: int
    symmetric_count: int
    implied_eul: int


def eulerian_identity_check(n: int, allow_large: bool = False) -> EulerianReport:
    """Split the invariant-form dimension as ``2**C(n,2) + 2 * eul``.

    Reversing every arc (swapping ``a`` and ``abar``) preserves the zero-weight
    subsets; its fixed points are the ``2**C(n,2)`` subsets built from whole
    2-cycles, and the remaining subsets pair up.
    """
    Z = sum(invariant_forms_hilbert(n, allow_large))
    sym = 2 ** comb(n, 2)
    rest = Z - sym
    if rest < 0 or rest % 2:
        raise InvariantError(f"Z({n}) - 2^C({n},2) = {rest} is not a nonnegative even number")
    return EulerianReport(n, Z, sym, rest // 2)

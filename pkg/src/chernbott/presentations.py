"""Cross-checks tying the rank side, the Groebner side and the combinatorics together."""
from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

from .edge_algebra import evaluate_polynomial
from .errors import ResourceError
from .groebner import (build_ideal_generators, cohomology_poincare,
                       hilbert_series_quotient, ideal_basis, is_member,
                       membership_via_derivatives)
from .linalg import hilbert_series_rank
from .polynomial import RationalPolynomial, monomials_of_degree

DESK_N = 5
LONG_RUN_N = 6


@dataclass
class VerificationResult:
    name: str
    parameters: dict[str, Any]
    left: Any
    right: Any
    passed: bool
    elapsed: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["verdict"] = self.verdict
        return out


def _check_size(n: int, long_run: bool, cap: int = DESK_N) -> None:
    limit = LONG_RUN_N if long_run else cap
    if n > limit:
        raise ResourceError(f"n={n} is beyond desk scale (limit {limit}"
                            + (")" if long_run else "; pass long_run=True)"))


def verify_presentation(k: int, n: int, *, seed: int = 0, long_run: bool = False,
                        exact: bool = False, cache_dir=None) -> VerificationResult:
    """Rank series of ``A_{k,n}`` against the standard-monomial count of ``I_{k,n}``."""
    _check_size(n, long_run)
    t0 = time.perf_counter()
    rank = hilbert_series_rank(k, n, seed=seed, exact=exact, details=True,
                               allow_large=True, cache_dir=cache_dir)
    G = ideal_basis(k, n)
    quotient = hilbert_series_quotient(G)
    return VerificationResult(
        "presentation", {"k": k, "n": n, "seed": seed},
        rank.series, quotient, rank.series == quotient, time.perf_counter() - t0,
        {"primes": rank.primes, "exact_fallback": rank.exact_fallback,
         "basis_size": len(G)})


def verify_subset_independence(k: int, n: int, *, seed: int = 0,
                               long_run: bool = False) -> VerificationResult:
    """Every k-subset of the curvature forms generates an algebra with the same series."""
    _check_size(n, long_run)
    t0 = time.perf_counter()
    per_subset = {}
    for S in combinations(range(1, n + 1), k):
        per_subset[",".join(map(str, S))] = hilbert_series_rank(k, n, S, seed=seed, allow_large=True)
    reference = per_subset["," .join(map(str, range(1, k + 1)))]
    ok = all(s == reference for s in per_subset.values())
    return VerificationResult("subsets", {"k": k, "n": n, "seed": seed},
                              reference, per_subset, ok, time.perf_counter() - t0,
                              {"subset_count": len(per_subset)})


def compare_with_cohomology(n: int, *, seed: int = 0, long_run: bool = False) -> VerificationResult:
    """The curvature algebra surjects onto cohomology, so its series dominates."""
    _check_size(n, long_run)
    t0 = time.perf_counter()
    algebra = hilbert_series_rank(n, n, seed=seed, allow_large=True) if n > 1 else [1]
    coh = cohomology_poincare(n)
    width = max(len(algebra), len(coh))
    a = algebra + [0] * (width - len(algebra))
    c = coh + [0] * (width - len(coh))
    diff = [x - y for x, y in zip(a, c)]
    return VerificationResult("cohomology", {"n": n, "seed": seed}, algebra, coh,
                              all(v >= 0 for v in diff), time.perf_counter() - t0,
                              {"difference": diff})


# -- derivative criterion ------------------------------------------------------

def random_polynomial(k: int, max_degree: int, rng: random.Random,
                      coeff_range: int = 3, density: float = 0.5) -> RationalPolynomial:
    terms = {}
    for d in range(max_degree + 1):
        for m in monomials_of_degree(k, d):
            if rng.random() < density:
                c = rng.randint(-coeff_range, coeff_range)
                if c:
                    terms[m] = Fraction(c)
    return RationalPolynomial(k, terms)


def random_member(k: int, n: int, rng: random.Random) -> RationalPolynomial:
    """``sum_i q_i g_i`` with random multipliers of degree <= 2."""
    p = RationalPolynomial(k)
    for g in build_ideal_generators(k, n).generators:
        p = p + random_polynomial(k, 2, rng) * g
    if not p.terms:
        p = build_ideal_generators(k, n).generators[-1]
    return p


def random_non_member(k: int, n: int, rng: random.Random, max_degree: int = 3) -> RationalPolynomial:
    """Random low-degree polynomial whose evaluation at the curvature forms is nonzero."""
    subset = tuple(range(1, k + 1))
    while True:
        p = random_polynomial(k, max_degree, rng)
        if p.terms and evaluate_polynomial(p, subset, n):
            return p


def triple_oracle(p: RationalPolynomial, k: int, n: int) -> tuple[bool, bool, bool]:
    """(evaluation vanishes, normal form vanishes, derivative criterion holds)."""
    by_eval = not evaluate_polynomial(p, tuple(range(1, k + 1)), n)
    by_nf = is_member(p, ideal_basis(k, n))
    by_der = membership_via_derivatives(p, k, n)
    return by_eval, by_nf, by_der


def verify_derivative_criterion(k: int, n: int, samples: int = 100, seed: int = 0,
                                *, long_run: bool = False) -> VerificationResult:
    """Seeded members and non-members; all three membership tests must agree."""
    if k > 3 or n > 4:
        _check_size(n, long_run, cap=4)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    disagreements = []
    members = non_members = 0
    for idx in range(samples):
        member = idx % 2 == 0
        p = random_member(k, n, rng) if member else random_non_member(k, n, rng)
        verdicts = triple_oracle(p, k, n)
        if len(set(verdicts)) != 1 or verdicts[0] != member:
            disagreements.append({"sample": idx, "polynomial": str(p), "oracles": verdicts,
                                  "constructed_member": member})
        members += member
        non_members += not member
    return VerificationResult(
        "lemma29", {"k": k, "n": n, "samples": samples, "seed": seed},
        {"members": members, "non_members": non_members}, {"disagreements": len(disagreements)},
        not disagreements, time.perf_counter() - t0, {"failures": disagreements[:10]})

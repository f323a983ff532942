"""Exact computations with the algebra generated by Chern-Bott curvature
2-forms on the complete flag variety SL_n/B."""

__version__ = "0.1.0"

from .combinatorics import (eulerian_bruteforce, forest_count,
                            forest_count_bruteforce, verify_conjecture_polynomial,
                            verify_conjecture_total)
from .edge_algebra import (GammaPolynomial, apply_transposition, curvature_form,
                           evaluate_exponent, evaluate_polynomial, multiply)
from .errors import ArgumentError, InvariantError, ResourceError
from .exterior import (ExteriorMonomial, eulerian_identity_check, gamma_embed,
                       invariant_forms_hilbert, monomial_to_digraph,
                       multiweight_of, wedge)
from .groebner import (GroebnerBasis, build_ideal_generators, buchberger,
                       cohomology_poincare, hilbert_series_quotient,
                       ideal_basis, membership_via_derivatives, normal_form)
from .linalg import (SparseExactMatrix, build_matrix, hilbert_series_rank,
                     rank_exact, rank_mod_p)
from .polynomial import RationalPolynomial, parse
from .presentations import (VerificationResult, compare_with_cohomology,
                            verify_derivative_criterion, verify_presentation,
                            verify_subset_independence)

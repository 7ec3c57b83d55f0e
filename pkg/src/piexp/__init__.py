"""Exact computations for finite-dimensional algebras with gradings, group actions or derivations:
radicals, invariant splittings, PI-exponents, codimensions and cocharacters."""

__version__ = "0.1.0"

from .algebra import ASSOCIATIVE, LIE, Algebra, nilradical, radical, validate_algebra
from .cocharacter import cocharacter, cocharacter_vanishing_check, irreducible_multiplicities, quotient_character
from .codimension import (DecoratedMonomial, MultilinearPolynomial, codim, codim_series, is_identity)
from .decomposition import (invariant_levi, invariant_simple_decomposition, invariant_wedderburn_malcev,
                            simple_ideal_decomposition, verify_splitting)
from .errors import (BudgetExceededError, FieldMismatchError, InconsistencyError, InsufficientFieldError,
                     NoInvariantComplementError, PiexpError, ValidationError)
from .exponent import (associative_exponent, is_invariant_simple, lie_exponent_from_chains,
                       simplicity_criterion_report)
from .fields import QQ, CyclotomicField, cyclotomic_field
from .linalg import Matrix
from .problem import load_problem
from .structures import (DerivationAction, GroupAction, Grading, OperatorAlgebra, close_group,
                         dual_action_from_grading, operator_envelope, validate_structure)
from .subspace import Subspace

__all__ = [
    "__version__", "ASSOCIATIVE", "LIE", "Algebra", "validate_algebra", "radical", "nilradical",
    "QQ", "CyclotomicField", "cyclotomic_field", "Matrix", "Subspace",
    "Grading", "GroupAction", "DerivationAction", "OperatorAlgebra", "close_group", "operator_envelope",
    "dual_action_from_grading", "validate_structure",
    "simple_ideal_decomposition", "invariant_simple_decomposition", "invariant_wedderburn_malcev",
    "invariant_levi", "verify_splitting",
    "associative_exponent", "lie_exponent_from_chains", "is_invariant_simple", "simplicity_criterion_report",
    "DecoratedMonomial", "MultilinearPolynomial", "codim", "codim_series", "is_identity",
    "quotient_character", "irreducible_multiplicities", "cocharacter", "cocharacter_vanishing_check",
    "load_problem", "PiexpError", "ValidationError", "FieldMismatchError", "InsufficientFieldError",
    "BudgetExceededError", "InconsistencyError", "NoInvariantComplementError",
]

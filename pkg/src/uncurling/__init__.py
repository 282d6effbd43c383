"""Exact computation of uncurling metrics, unital norms, and isomorphism
invariants for finite-dimensional unital associative algebras given by
structure constants.
"""

from .algebra import (
    Algebra,
    algebra_from_json,
    algebra_to_json,
    change_of_basis,
    find_unit,
    left_regular,
    load_algebra,
    make_algebra,
    numeric_inverse,
    symbolic_inverse,
    trace_form,
    unit_norm_squared,
    usual_norm_poly,
    validate,
)
from .catalog import builtin_algebra, direct_sum
from .errors import (
    AlgebraError,
    InconsistentFamilyError,
    NegativeFormError,
    NonUnitError,
    NotNormalizedError,
    NoUnitError,
    PathThroughNonUnitError,
    QuadratureNotConvergedError,
    SingularMatrixError,
    UncurlingError,
)
from .polys import MultiPoly, PolyMatrix, det_and_adjugate, partial_derivative, poly_arith
from .uncurl import (
    DistinguishResult,
    InvariantReport,
    NormalizedFamily,
    SymMetric,
    UncurlingSpace,
    canonical_metric,
    curl_constraints,
    distinguish,
    invariant_report,
    normalization_constraints,
    normalized_family,
    uncurling_space,
    verify_uncurling,
)
from .unital import (
    NormEvaluator,
    PathSpec,
    QuadConfig,
    check_gradient,
    check_homogeneity,
    check_inversion,
    make_evaluator,
    recover_inverse,
)

__version__ = "0.1.0"

"""Error types shared across the package.

The CLI maps these onto process exit codes, so every failure mode that can
reach a user goes through one of the classes below.
"""


class UncurlingError(Exception):
    """Base class for all package errors."""


class AlgebraError(UncurlingError):
    """Invalid algebra input: bad tensor shape, associativity failure, unit problems."""


class NoUnitError(AlgebraError):
    """The multiplication table admits no two-sided identity."""


class SingularMatrixError(UncurlingError):
    """A matrix required to be invertible is singular."""


class NonUnitError(UncurlingError):
    """A point is not invertible (determinant below the non-unit threshold)."""


class NotNormalizedError(UncurlingError):
    """A candidate metric fails exact membership in the normalized family."""


class InconsistentFamilyError(UncurlingError):
    """The normalization constraints have no solution on the uncurling space."""


class PathThroughNonUnitError(UncurlingError):
    """An integration path hits a non-unit at some quadrature node."""


class QuadratureNotConvergedError(UncurlingError):
    """Dyadic refinement hit the depth limit without meeting the tolerance."""


class NegativeFormError(UncurlingError):
    """A quadratic form value is negative beyond tolerance."""

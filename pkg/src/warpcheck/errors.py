"""Exception types raised across the package."""


class WarpcheckError(Exception):
    """Base class for all library errors."""


class DegenerateInputError(WarpcheckError):
    """Linearly dependent input where independence is required."""


class DegeneratePlaneError(DegenerateInputError):
    """Vectors fail to span a 2-plane (or k-plane)."""


class InvalidInputError(WarpcheckError):
    """Input violates a stated precondition (shape, symmetry, unit norm, block purity)."""


class NumericalDomainError(WarpcheckError):
    """A function evaluation produced a non-finite value."""


class DegenerateMetricError(WarpcheckError):
    """Metric not positive definite at the queried point."""


class InvalidWarpingError(WarpcheckError):
    """Warping function non-positive at a queried point."""


class InvalidParameterError(WarpcheckError):
    """Structure parameters outside their admissible range."""


class SingularParameterError(InvalidParameterError):
    """Parameter value makes a model formula singular (kappa >= 1 for the non-Sasakian tensor)."""


class InvalidFrameError(WarpcheckError):
    """Contact frame does not satisfy the structural identities required by an operation."""


class InvalidConfigurationError(WarpcheckError):
    """Inconsistent combination of data, flags or dimensions."""


class ImmersionDegeneracyError(WarpcheckError):
    """Immersion Jacobian rank-deficient at the queried point."""


class InadmissibleTupleError(WarpcheckError):
    """Tuple does not satisfy the quadratic constraint of the trace lemma."""


class SceneError(WarpcheckError):
    """Base class for scene-file problems."""


class SceneParseError(SceneError):
    """Scene file malformed (unreadable or invalid JSON)."""


class SceneValidationError(SceneError):
    """Scene file well-formed but semantically invalid."""

"""Exception types shared across the toolkit."""


class HypDelocError(Exception):
    """Base class for all toolkit errors."""


class InvalidGeometry(HypDelocError):
    """Geometric input violates a structural constraint (det, sign, range)."""


class FrontierOverflow(HypDelocError):
    """Orbit enumeration exceeded the configured frontier cap."""


class NotDiscrete(HypDelocError):
    """Two distinct reduced words of a free-flagged group gave the same matrix."""


class NoNonIdentityFound(HypDelocError):
    """Systole estimation found no non-identity element within the word cap."""


class QuadratureNonConvergence(HypDelocError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class NegativeEigenvalue(HypDelocError):
    """Spectral parameter requested for an eigenvalue below zero."""


class UntemperedInput(HypDelocError):
    """Operation defined only for tempered spectral parameters."""


class DeltaTooLarge(HypDelocError):
    """Counting exponent delta is at or above the validated ceiling."""


class HypothesisViolated(HypDelocError):
    """A stated hypothesis of a norm bound does not hold for these inputs."""

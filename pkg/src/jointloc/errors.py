"""Exception types raised across the package."""


class JointLocError(ValueError):
    """Base class for all package errors."""


class NonHermitian(JointLocError):
    pass


class NoConvergence(JointLocError):
    pass


class NegativeEigenvalue(JointLocError):
    pass


class DimensionMismatch(JointLocError):
    pass


class InvalidMetric(JointLocError):
    pass


class UnknownOutcome(JointLocError, KeyError):
    pass


class NotPositive(JointLocError):
    pass


class InvalidPovm(JointLocError):
    pass


class IncompatibleSpaces(JointLocError):
    pass


class UnbalancedMeasure(JointLocError):
    pass


class VertexEnumerationTooLarge(JointLocError):
    pass


class DimensionTooLarge(JointLocError):
    pass


class ConfigError(JointLocError):
    """Malformed scenario configuration; message carries the field path."""

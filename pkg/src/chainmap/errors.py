"""Exception hierarchy shared by every chainmap module."""


class ChainmapError(Exception):
    """Base class for all library errors."""


class NonIntegrable(ChainmapError):
    """Spectral density has infinite or vanishing total weight."""


class NegativeDensity(ChainmapError):
    pass


class NoConvergence(ChainmapError):
    pass


class MeasureDegenerate(ChainmapError):
    """A non-positive beta was produced: the measure supports fewer polynomials."""


class PrecisionExhausted(ChainmapError):
    """Moment-based recursion lost all significant digits.

    ``partial`` holds the coefficients computed before breakdown.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class EigenFailure(ChainmapError):
    pass


class UnboundedSupport(ChainmapError):
    pass


class DeltaOutOfRange(ChainmapError):
    pass


class DimensionMismatch(ChainmapError):
    pass


class IndexBeyondModes(ChainmapError):
    pass


class MomentMatrixSingular(ChainmapError):
    pass


class TailNotConverged(ChainmapError):
    pass


class SingularityUndeclared(ChainmapError):
    pass


class ConfigError(ChainmapError):
    pass


class GappedSupportWarning(UserWarning):
    """Zero-valued stretch wide enough to be a real gap; see ``split_gapped``."""

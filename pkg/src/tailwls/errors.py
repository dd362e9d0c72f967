"""Exception types shared across the package.

Every error raised on purpose by this package derives from ``TailwlsError``,
so callers can catch one base class. Concrete classes also inherit
``ValueError`` because they all signal a rejected input or configuration.
"""


class TailwlsError(Exception):
    """Base class for all errors raised by this package."""


class EmptyOrTinyError(TailwlsError, ValueError):
    """Sample has fewer than two entries."""


class NonPositiveError(TailwlsError, ValueError):
    """A value is zero or negative where strict positivity is required."""


class NonFiniteError(TailwlsError, ValueError):
    """A sample value is NaN or infinite."""


class KOutOfRangeError(TailwlsError, ValueError):
    """Tail fraction k lies outside the admissible range for the sample."""


class KTooSmallError(KOutOfRangeError):
    """Regression needs at least two spacings (k >= 2)."""


class InvalidRhoError(TailwlsError, ValueError):
    """Second-order parameter rho must be finite and strictly negative."""


class NegativePenaltyError(TailwlsError, ValueError):
    """Ridge penalty must be nonnegative."""


class DegenerateTailError(TailwlsError, ValueError):
    """Top order statistics carry no usable variation (e.g. all tied)."""


class GridEmptyError(TailwlsError, ValueError):
    """Candidate grid for rho selection is empty."""


class UOutOfRangeError(TailwlsError, ValueError):
    """Quantile argument u must satisfy 0 <= u < 1."""


class NonPositiveMeanError(TailwlsError, ValueError):
    """Model mean gamma + b*C_j must stay positive for every j."""


class EmptyEstimatorSetError(TailwlsError, ValueError):
    """A simulation was requested with no estimators."""


class EmptyInputError(TailwlsError, ValueError):
    """An aggregate operation received no rows."""


class NonPositiveTrueGammaError(TailwlsError, ValueError):
    """The reference tail index gamma must be strictly positive."""

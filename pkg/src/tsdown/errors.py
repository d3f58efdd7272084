"""Exception types, one per named invariant violation."""


class TsdownError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(TsdownError, ValueError):
    """An input or configuration violates a documented invariant."""


class NonMonotonicX(ValidationError):
    """x-values are not sorted in non-decreasing order."""


class NonFiniteValue(ValidationError):
    """A sample contains NaN or infinity."""


class NOutOfRange(ValidationError):
    """Target output size n_out is outside [3, N]."""


class BadPreselectionRatio(ValidationError):
    """Preselection ratio is not 1 and not an even integer >= 2."""


class InvalidPartition(ValidationError):
    """Bucket count does not fit the index range."""


class OddNOut(ValidationError):
    """MinMax requires an even n_out (two extrema per bucket)."""


class NOutNotDivisibleBy4(ValidationError):
    """M4 requires n_out divisible by 4 (four points per bucket)."""


class RatioTooLargeForSeries(ValidationError):
    """Sub-bucket count exceeds the interior size of the series."""


class NotParallelizable(ValidationError):
    """The requested algorithm requires a sequential pass."""


class DimensionMismatch(ValidationError):
    """Compared images have different shapes."""


class DegenerateRange(ValidationError):
    """A canvas data range has zero or negative extent."""


class UnknownKind(ValidationError):
    """Unrecognized synthetic template kind."""


class InsufficientData(TsdownError):
    """Not enough measurements to fit a scaling model."""


class OutOfMemory(TsdownError):
    """An allocation failed; the message names the offending series size."""

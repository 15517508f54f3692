"""Exception hierarchy shared across the library."""


class FrameMeasuresError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(FrameMeasuresError):
    """Inputs disagree on vector dimension or sequence length."""


class NonFinite(FrameMeasuresError):
    """Input contains NaN or infinite entries."""


class NotAFrame(FrameMeasuresError):
    """Lower frame bound is numerically zero; the vectors do not span."""


class ZeroVector(FrameMeasuresError):
    """A nonzero vector is required (normalizer c(0) = 0 is undefined)."""


class ZeroFrameVector(FrameMeasuresError):
    """Chain construction requires every frame vector to be nonzero."""


class IndexOutOfRange(FrameMeasuresError):
    """An index lies outside the frame or kernel range."""


class TooLarge(FrameMeasuresError):
    """Exact enumeration refused beyond the desk-scale cap."""


class DimensionExceedsTruncation(FrameMeasuresError):
    """Vector dimension exceeds the white-noise truncation dimension."""


class KTooLarge(FrameMeasuresError):
    """Moment order beyond the Monte-Carlo resolution cap."""


class LengthMismatch(FrameMeasuresError):
    """Per-sample value array does not match the ensemble size."""


class SingularGramian(FrameMeasuresError):
    """Joint density requires a strictly positive definite Gramian."""


class NotParseval(FrameMeasuresError):
    """Operation requires a Parseval frame (both bounds equal to 1)."""


class NotTight(FrameMeasuresError):
    """Operation requires a tight frame (equal bounds)."""


class Overflow(FrameMeasuresError):
    """Exponent outside the representable double range."""


class ConfigError(FrameMeasuresError):
    """Malformed CLI/config input."""

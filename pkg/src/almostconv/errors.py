"""Exception types shared across the package."""


class AlmostconvError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(AlmostconvError):
    """Malformed input file, invalid schedule, or inconsistent options."""


class UnsupportedPoint(AlmostconvError):
    """Requested a closed-form value where none exists (custom samples)."""


class DivergentSeries(AlmostconvError):
    """Dirichlet-line evaluation requested at or below the declared abscissa."""


class AliasingError(AlmostconvError):
    """Continuous sampling grid too coarse for the generator's frequencies."""


class WindowOutOfRange(AlmostconvError):
    """An averaging window does not fit the signal under its extension policy."""


class EmptyGrid(AlmostconvError):
    """No admissible shifts remain for the requested window."""


class TooShort(AlmostconvError):
    """Signal too short for the requested analysis."""


class KernelTooWide(AlmostconvError):
    """Convolution kernel support exceeds the signal span."""


class GapTooWide(AlmostconvError):
    """High-pass gap half-width at or beyond the Nyquist frequency."""


class InsufficientCoefficients(AlmostconvError):
    """Coefficient stream shorter than the certified truncation index."""


class TailNotControlled(AlmostconvError):
    """Rendered range too short to certify the transform truncation error."""


class HypothesisViolated(AlmostconvError):
    """A user-asserted Tauberian hypothesis fails on the supplied data."""


class KernelVanishes(AlmostconvError):
    """Test kernel's transform dips below the required floor on the band."""


class RangeTooShort(AlmostconvError):
    """Tail analysis requested beyond the rendered range."""


class NotInvariant(AlmostconvError):
    """Supplied basis does not span a translation-invariant subspace."""


class NotAMean(AlmostconvError):
    """Functional fails the positivity/normalization conditions of a mean."""


class RankDeficientInput(UserWarning):
    """Dependent vectors supplied where a basis was expected (deduplicated)."""

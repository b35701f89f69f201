# In src/padiclab/lib/exceptions.py
"""Exception hierarchy shared by the library modules and the CLI."""


class PadicLabError(Exception):
    """Base class for every error raised deliberately by padiclab."""


class InvalidPrimeError(PadicLabError, ValueError):
    """Raised when a base is not a prime accepted by the deterministic check."""


class UnsupportedBaseError(PadicLabError, ValueError):
    """Raised when an operation is not implemented for the given prime."""


class BaseMismatchError(PadicLabError, ValueError):
    """Raised when two p-adic operands carry different primes."""


class PrecisionExhaustedError(PadicLabError, ArithmeticError):
    """Raised when a value is indistinguishable from zero at its precision."""


class PrecisionInsufficientError(PadicLabError, ValueError):
    """Raised when a p-adic target has fewer digits than a construction needs."""


class LiteralParseError(PadicLabError, ValueError):
    """Raised when a rational or p-adic literal cannot be parsed."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class SequenceFormatError(PadicLabError, ValueError):
    """Raised when a sequence file or label list is malformed."""


class ProfileTooShortError(PadicLabError, ValueError):
    """Raised when a complexity schedule yields too few prefix points."""


class InvalidCompressorError(PadicLabError, ValueError):
    """Raised when a compressor fails its round-trip probe."""


class ScenarioError(PadicLabError, ValueError):
    """Raised for scenario specifications the simulator cannot run."""


class EmptyHistogramError(PadicLabError, ValueError):
    """Raised when a fringe metric is requested for a histogram with no counts."""


class StatisticsError(PadicLabError, ValueError):
    """Raised when a counting test has too little or degenerate data."""

"""Exception types shared across the package."""


class AptrigError(Exception):
    """Base class for package-specific errors."""


class InvalidFamilyError(AptrigError, ValueError):
    """An Orlicz family member violates the convexity/monotonicity contract."""


class OrliczRangeError(AptrigError, OverflowError):
    """An Orlicz function overflowed while evaluating a norm."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"Orlicz function overflowed at coefficient index {index}")


class UnsupportedSizeError(AptrigError, ValueError):
    """The brute-force oracle was asked for a support larger than its limit."""


class InvalidPhiError(AptrigError, ValueError):
    """A smoothness multiplier function violates its contract."""


class DegeneratePhiError(AptrigError, ValueError):
    """The covering LP is infeasible because phi vanishes on the whole grid."""


class SpectrumGapError(AptrigError, ValueError):
    """Spectrum gaps exceed the declared uniform bound."""


class PreconditionError(AptrigError, ValueError):
    """A verifier precondition (for example, a non-constant signal) fails."""


class ConfigError(AptrigError, ValueError):
    """A run configuration is unreadable or inconsistent."""

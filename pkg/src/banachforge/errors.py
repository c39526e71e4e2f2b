"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(ToolkitError, ValueError):
    """Malformed input: bad rank, unreduced text, inconsistent group spec."""


class RadiusExceededError(ToolkitError):
    """The requested answer would depend on set membership outside the
    declared validity radius of a predicate."""


class CertificateViolationError(ToolkitError):
    """A construction-time guarantee failed at runtime, e.g. a word that was
    certified nontrivial turned out to lie in the kernel."""


class GuardRefusedError(ToolkitError):
    """An enumeration larger than the configured guard was refused."""


class SearchExhaustedError(ToolkitError):
    """A bounded search finished without finding a certified witness."""

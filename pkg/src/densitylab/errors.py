"""Error types shared by all densitylab modules.

All of these derive from ValueError so callers that do not care about the
distinction can catch one base class.  The CLI maps ValidationError and
DomainError to exit code 2 and CapacityError to exit code 4; exhausted
searches are reported by returning None, not by raising.
"""


class DensityLabError(ValueError):
    """Base class for densitylab errors."""


class ValidationError(DensityLabError):
    """Malformed specification or configuration."""


class DomainError(DensityLabError):
    """Arguments outside an operation's stated domain."""


class CapacityError(DensityLabError):
    """Request exceeds a supported horizon or memory cap."""

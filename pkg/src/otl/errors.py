"""Exception hierarchy shared across the package."""


class OtlError(Exception):
    """Base class for all package errors."""


class ValidationError(OtlError):
    """An input object violates its invariants."""


class ConfigurationError(OtlError):
    """A config file, policy spec, or CLI argument is inconsistent."""


class ResourceLimitError(OtlError):
    """A horizon or state lattice exceeds the configured size bound."""


class UnreachableStateError(OtlError, LookupError):
    """Query for a (time, belief) pair the solver never reached."""

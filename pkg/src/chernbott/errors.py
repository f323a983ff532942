"""Exception types shared across the package."""


class ArgumentError(ValueError):
    """Invalid argument (index out of range, ambient mismatch, ...)."""


class ResourceError(RuntimeError):
    """A computation would exceed a configured size cap."""


class InvariantError(AssertionError):
    """An internal consistency check failed; indicates a bug."""

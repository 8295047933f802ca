"""Exception types shared across the package."""


class ConsistencyError(RuntimeError):
    """An internal exactness check failed; this signals a bug, not bad input."""


class GluingError(ValueError):
    """A requested gluing is illegal (occupied port or incompatible ports)."""

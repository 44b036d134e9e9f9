"""Exception types raised across the package."""


class ParameterError(ValueError):
    """Invalid (p, q) pair or derived constant."""


class UsageError(ValueError):
    """An operation was called with incompatible arguments (e.g. mixed group kinds)."""


class BudgetExceeded(RuntimeError):
    """The brute-force oracle refused a problem larger than its budget."""


class ConstructionError(ValueError):
    """A brace or solution could not be built from the given input."""

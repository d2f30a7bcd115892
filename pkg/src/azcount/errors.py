"""Exception types shared across the package."""


class ContractViolation(ValueError):
    """An argument broke an operation's precondition (length, index, order)."""


class ResourceLimitError(RuntimeError):
    """A configured size guard refused the computation."""


class ConsistencyError(RuntimeError):
    """Two routes to the same quantity disagreed."""


class InvariantError(AssertionError):
    """A structural law of a coefficient table failed."""

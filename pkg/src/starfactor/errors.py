"""Exception types shared across the package."""


class GraphError(ValueError):
    """Invalid graph, parameters or vertex sets."""


class CapExceeded(GraphError):
    """Graph is larger than an operation's configured size cap."""


class DisconnectedGraphError(GraphError):
    pass


class InvalidPartitionError(ValueError):
    pass


class NotApplicableError(ValueError):
    """A closed-form bound is undefined for the given graph."""


class NonConvergenceError(RuntimeError):
    pass


class NoSignChangeError(ValueError):
    pass


class SearchTimeout(RuntimeError):
    """An exhaustive search ran out of its time or node budget.

    This is never a proof of absence.
    """

"""Exception types raised across the package."""


class InadmissibleError(ValueError):
    """The input words lie in conjugate cyclic subgroups (or are empty)."""


class BudgetExceeded(RuntimeError):
    """A vertex, truncation, phase or step budget ran out."""


class TuningError(RuntimeError):
    """An invariant that the construction relies on failed at runtime."""

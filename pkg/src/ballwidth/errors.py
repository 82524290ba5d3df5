"""Exception types shared across the package."""


class BudgetExceededError(RuntimeError):
    """An instance would exceed a configured size budget.

    Raised before any expensive work starts, so callers can catch it and
    degrade gracefully (the sweep reports OVER_BUDGET instead of dying).
    """

    def __init__(self, required: int, budget: int, what: str = "elements"):
        super().__init__(
            f"budget exceeded: {required} {what} needed, budget is {budget}"
        )
        self.required = required
        self.budget = budget


class CustomPosetError(ValueError):
    """A user-supplied poset document is malformed or inconsistent."""


class GradedQuotientError(RuntimeError):
    """A coordinate family does not yield a graded quotient diagram."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    This always indicates a bug; it is never a property of the input.
    """

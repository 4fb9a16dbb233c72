"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration was asked to walk more objects than allowed."""


class VerificationError(RuntimeError):
    """An internal cross-check failed (closed form vs. oracle, or dual-path
    disagreement).  Reaching this indicates a bug, never bad user input."""

"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid mathematical input (bad divisor, broken partition, mismatched section, ...)."""


class BudgetError(RuntimeError):
    """A configurable resource bound was exceeded; the answer was not computed."""

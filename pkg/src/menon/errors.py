"""Exception hierarchy shared by the library and the CLI."""

import os

BUDGET_ENV = "MENON_BUDGET"
DEFAULT_BUDGET = 10**7


class MenonError(Exception):
    """Base class for all library errors."""


class ValidationError(MenonError, ValueError):
    """Bad input: violated precondition, malformed text, unknown name."""


class BudgetExceeded(MenonError):
    """A brute-force loop would exceed its evaluation budget."""


class RangeOverflow(MenonError, ArithmeticError):
    """A value left the signed 128-bit working range."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValidationError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def check_budget(cost: int, budget: int | None, what: str) -> None:
    limit = default_budget() if budget is None else budget
    if cost > limit:
        raise BudgetExceeded(f"{what}: {cost} evaluations exceeds budget {limit}")

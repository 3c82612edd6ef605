from __future__ import annotations

import os

from .errors import BudgetExceeded

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """Enumeration budget, overridable through the ``BNT_BUDGET`` env var."""
    raw = os.environ.get("BNT_BUDGET")
    if raw:
        value = int(raw)
        if value <= 0:
            raise ValueError("BNT_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


class Budget:
    """Counts examined candidates and raises once the limit is crossed."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        self.used = 0

    def spend(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(self.used, self.limit)

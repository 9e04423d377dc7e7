"""
Wall-clock budgets and optional timing instrumentation
"""
from __future__ import annotations

import logging
import os
import time

logger = logging.getLogger(__name__)

MEASURE_TIMES = os.environ.get("NEUMANN_RFG_MEASURE_TIMES", "0") == "1"

perf_stats: dict[str, float] = {
    "total_build": 0.0,
    "total_verify": 0.0,
    "total_growth": 0.0,
    "total_oracle": 0.0,
    "num_checks": 0,
}
perf_start_time = 0.0


if MEASURE_TIMES:

    def measure_start() -> None:
        global perf_start_time
        perf_start_time = time.perf_counter()

    def measure(name: str) -> None:
        perf_stats[name] = perf_stats.get(name, 0.0) + time.perf_counter() - perf_start_time

else:

    def measure_start() -> None:
        pass

    def measure(name: str) -> None:
        pass


class BudgetExceeded(Exception):
    """
    Raised when a run passes its wall-clock budget
    """

    def __init__(self, stage: str, elapsed_ms: float, budget_ms: int) -> None:
        self.stage = stage
        self.elapsed_ms = elapsed_ms
        self.budget_ms = budget_ms
        super().__init__(stage, elapsed_ms, budget_ms)

    def __str__(self) -> str:
        return (
            f"Budget of {self.budget_ms} ms exceeded after {self.stage}"
            f" ({self.elapsed_ms:.0f} ms elapsed)"
        )


class Budget:
    """
    Checked between units of work; a budget of None never runs out
    """

    def __init__(self, budget_ms: int | None = None) -> None:
        self.budget_ms = budget_ms
        self._start = time.monotonic()

    @property
    def elapsed_ms(self) -> float:
        return (time.monotonic() - self._start) * 1000

    def check(self, stage: str) -> None:
        if self.budget_ms is None:
            return
        elapsed = self.elapsed_ms
        if elapsed > self.budget_ms:
            logger.warning("Budget exceeded after %s: %.0f ms", stage, elapsed)
            raise BudgetExceeded(stage, elapsed, self.budget_ms)

"""
Check runner: turns assertion-raising verification callables into
pass/fail records, so a report can carry every failure instead of
stopping at the first.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    detail: str = ""
    advisory: bool = False

    def as_row(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "detail": self.detail,
            "advisory": self.advisory,
        }


@dataclass
class CheckReport:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, other: CheckReport) -> None:
        self.results.extend(other.results)

    def __iter__(self) -> Iterator[CheckResult]:
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def __getitem__(self, name: str) -> CheckResult:
        for result in self.results:
            if result.name == name:
                return result
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        """
        True if every non-advisory check passed
        """
        return all(r.passed or r.advisory for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed and not r.advisory]


class Check:
    """
    Wrapper around a verification callable. The callable returns the number
    of cases it examined and signals failure by raising.

    Instead of:
        try:
            cases = check_commuting(ctx, 50)
        except AssertionError as err:
            ...

    Use:
        result = Check("commuting", lambda: check_commuting(ctx, 50)).run()
    """

    last_error: BaseException | None = None

    def __init__(
        self,
        name: str,
        func: Callable[[], int],
        *,
        advisory: bool = False,
        catch: tuple[type[Exception], ...] = (),
    ) -> None:
        """
        :param catch: exception types, besides AssertionError, that count as
            a failed check
        """
        self.name = name
        self._func = func
        self._advisory = advisory
        self._caught = (AssertionError, *catch)

    def run(self) -> CheckResult:
        try:
            cases = self._func()
        except self._caught as err:
            Check.last_error = err
            detail = str(err) or type(err).__name__
            log = logger.warning if self._advisory else logger.info
            log("Check %s failed: %s", self.name, detail)
            return CheckResult(self.name, False, 0, detail, self._advisory)
        logger.info("Check %s passed (%d cases)", self.name, cases)
        return CheckResult(self.name, True, cases, "", self._advisory)

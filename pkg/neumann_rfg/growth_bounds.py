"""
Growth bounds in the natural-log domain, with an exact big-integer path
for desk-scale values.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from neumann_rfg.neumann_groups import (
    GroupContext,
    coordinate_eval,
    cutoff,
    is_trivial,
)
from neumann_rfg.profiles import GrowthProfile, ProfileRangeError
from neumann_rfg.wreaths import w_eval

logger = logging.getLogger(__name__)

EXACT_FACTORIAL_LIMIT = 2000
EXACT_STORE_LIMIT = 1 << 1024
LOG2 = math.log(2)


@dataclass(frozen=True)
class LogValue:
    """
    A positive quantity held by its natural log, plus the integer itself
    when it is at most 2^1024
    """

    magnitude: float
    exact: int | None = None

    @classmethod
    def of_int(cls, value: int) -> LogValue:
        if value < 1:
            raise ValueError(f"LogValue needs a positive integer, got {value}")
        return cls(math.log(value), value if value <= EXACT_STORE_LIMIT else None)

    def times(self, other: LogValue) -> LogValue:
        if self.exact is not None and other.exact is not None:
            product = self.exact * other.exact
            if product <= EXACT_STORE_LIMIT:
                return LogValue.of_int(product)
        return LogValue(self.magnitude + other.magnitude)

    def halved(self, times: int = 1) -> LogValue:
        """
        Divide by 2^times
        """
        if self.exact is not None and self.exact % (1 << times) == 0:
            return LogValue.of_int(self.exact >> times)
        return LogValue(self.magnitude - times * LOG2)


def log_factorial_exact(n: int) -> float:
    return math.log(math.factorial(n))


def log_factorial_lgamma(n: int) -> float:
    return math.lgamma(n + 1)


def log_factorial(n: int) -> LogValue:
    """
    log n!, computed from the exact integer up to n = 2000 and from lgamma
    beyond
    """
    if n < 0:
        raise ValueError(f"Factorial of negative {n}")
    if n <= EXACT_FACTORIAL_LIMIT:
        return LogValue.of_int(math.factorial(n))
    return LogValue(log_factorial_lgamma(n))


def alt_order(d: int) -> LogValue:
    """
    d!/2
    """
    return log_factorial(d).halved()


@dataclass(frozen=True)
class BoundRow:
    n: int
    lower_log: float
    upper_log: float
    kind: str
    log_F: float | None = None
    envelope_lower: float | None = None
    envelope_upper: float | None = None

    @property
    def consistent(self) -> bool:
        return self.lower_log <= self.upper_log + 1e-9 * max(1.0, abs(self.upper_log))

    @property
    def in_envelope(self) -> bool | None:
        """
        Whether [lower, upper] meets the envelope for the candidate constants
        """
        if self.envelope_lower is None or self.envelope_upper is None:
            return None
        return self.envelope_lower <= self.upper_log and self.lower_log <= self.envelope_upper

    def as_row(self) -> dict[str, object]:
        return {
            "n": self.n,
            "kind": self.kind,
            "lower_log": round(self.lower_log, 9),
            "upper_log": round(self.upper_log, 9),
            "log_F": None if self.log_F is None else round(self.log_F, 9),
            "consistent": self.consistent,
            "in_envelope": self.in_envelope,
        }


@dataclass
class BoundTable:
    rows: list[BoundRow] = field(default_factory=list)

    def violations(self) -> list[BoundRow]:
        return [row for row in self.rows if not row.consistent]


def rf_upper(ctx: GroupContext, n: int) -> LogValue:
    return alt_order(ctx.d(n))


def full_rf_upper(ctx: GroupContext, n: int) -> LogValue:
    """
    prod_{k <= 2n} d(k)! / 2^(2n)
    """
    total = LogValue.of_int(1)
    for k in range(1, 2 * n + 1):
        total = total.times(log_factorial(ctx.d(k)))
    return total.halved(2 * n) if n else total


def _lower_point(ctx: GroupContext, m: int) -> BoundRow:
    n = 4 + 4 * ctx.r(m)
    return BoundRow(
        n=n,
        lower_log=alt_order(ctx.d(m)).magnitude,
        upper_log=rf_upper(ctx, n).magnitude,
        kind="rf_point",
    )


def rf_lower_points(ctx: GroupContext, M: int) -> list[BoundRow]:
    """
    For m <= M the point (4 + 4r(m), log d(m)!/2), paired with the upper
    bound at the same argument
    """
    return [_lower_point(ctx, m) for m in range(1, M + 1)]


def reachable_lower_points(ctx: GroupContext, M: int) -> list[BoundRow]:
    """
    rf_lower_points, stopping at the first point a table profile cannot
    evaluate
    """
    points = []
    for m in range(1, M + 1):
        try:
            points.append(_lower_point(ctx, m))
        except ProfileRangeError as err:
            logger.debug("Lower points stop at m=%d: %s", m - 1, err)
            break
    return points


def _rf_lower_at(points: Sequence[BoundRow], n: int) -> float:
    return max((p.lower_log for p in points if p.n <= n), default=0.0)


def _loglog_terms(log_f: float) -> tuple[float, float] | None:
    # (loglog F, logloglog F), defined once log F > e
    if log_f <= math.e:
        return None
    loglog = math.log(log_f)
    return loglog, math.log(loglog)


def envelope_report(
    ctx: GroupContext,
    profile: GrowthProfile,
    N: int,
    c1: float = 72.0,
    c2: float = 256.0,
    c3: float = 4.0,
) -> BoundTable:
    """
    Rows n <= N for both growth functions: the proven lower and upper
    bounds, log F(n), and the envelope at the candidate constants.

    For table profiles, log F and the envelope are left empty past the end
    of the table, and the rows stop at the first n whose upper bounds need
    indices the table does not reach.
    """
    # 4 + 4r(m) <= N needs r(m) < N/4, and r(m) > m
    M = max(1, N // 4)
    points = reachable_lower_points(ctx, M)
    table = BoundTable()
    for n in range(1, N + 1):
        try:
            upper, full_upper = rf_upper(ctx, n), full_rf_upper(ctx, n)
        except ProfileRangeError as err:
            logger.warning("Bounds stop at n=%d: %s", n - 1, err)
            break
        lower = _rf_lower_at(points, n)
        log_f = profile.log_F(n) if profile.covers(n) else None
        rf_env: tuple[float | None, float | None] = (None, None)
        full_env: tuple[float | None, float | None] = (None, None)
        if (
            log_f is not None
            and profile.covers(c1 * n + c2)
            and (terms := _loglog_terms(log_f)) is not None
        ):
            loglog, logloglog = terms
            t = logloglog / loglog
            low_env = (1 - c3 * t) * profile.log_F(n / c1 - c2)
            up_arg = profile.log_F(c1 * n + c2)
            rf_env = (low_env, (2 + c3 * t) * up_arg)
            full_env = (low_env, (2 + c3 * math.log(n) / loglog) * n * up_arg)
        table.rows.append(BoundRow(n, lower, upper.magnitude, "rf", log_f, *rf_env))
        table.rows.append(
            BoundRow(n, lower, full_upper.magnitude, "full_rf", log_f, *full_env)
        )
    logger.debug("Envelope report with %d rows", len(table.rows))
    return table



@dataclass(frozen=True)
class StirlingReport:
    K: int
    constant_a: float
    constant_b: float
    tail_a: float
    tail_b: float
    samples: int

    @property
    def passed(self) -> bool:
        """
        Finite constants over a nonempty sample
        """
        finite = all(
            math.isfinite(x)
            for x in (self.constant_a, self.constant_b, self.tail_a, self.tail_b)
        )
        return finite and self.samples > 0

    def stable(self, head_a: float, head_b: float) -> bool:
        return self.tail_a <= 2 * head_a and self.tail_b <= 2 * head_b


def stirling_sandwich_failures(limit: int) -> list[int]:
    """
    n <= limit where n log n - n <= log n! <= n log n fails
    """
    bad = []
    for n in range(1, limit + 1):
        value = log_factorial(n).magnitude
        upper = n * math.log(n)
        if not upper - n <= value <= upper + 1e-9 * max(1.0, upper):
            bad.append(n)
    return bad


def stirling_constants(
    log_G: Callable[[int], float], N: int, K: int
) -> tuple[list[float], list[float]]:
    """
    Per-n ratios of the observed error to the error term, for the
    factorial estimates with g(n) = ceil(log G / loglog G).

    Only n with log G(n) > e^e contribute, so every term is positive.
    """
    ratios_a: list[float] = []
    ratios_b: list[float] = []
    for n in range(2, N + 1):
        lg = log_G(n)
        if lg <= math.exp(math.e):
            continue
        loglog = math.log(lg)
        logloglog = math.log(loglog)
        g = math.ceil(lg / loglog)
        err_a = abs(log_factorial(K * g).magnitude - K * lg)
        ratios_a.append(err_a / (lg * logloglog / loglog))
        excess_b = max(0.0, log_factorial(K * n * g).magnitude - K * n * lg)
        ratios_b.append(excess_b / (n * lg * math.log(n) / loglog))
    return ratios_a, ratios_b


def stirling_check(log_G: Callable[[int], float], N: int, K: int) -> tuple[StirlingReport, bool]:
    """
    Empirical constants for both factorial estimates.

    :return: the report and whether the tail is stable: the last-decile
        maximum is at most twice the maximum over the rest
    """
    ratios_a, ratios_b = stirling_constants(log_G, N, K)
    if not ratios_a:
        return StirlingReport(K, math.inf, math.inf, math.inf, math.inf, 0), False
    split = max(1, int(len(ratios_a) * 0.9))
    head_a = max(ratios_a[:split])
    head_b = max(ratios_b[:split])
    tail_a = max(ratios_a[split:], default=0.0)
    tail_b = max(ratios_b[split:], default=0.0)
    report = StirlingReport(
        K, max(ratios_a), max(ratios_b), tail_a, tail_b, len(ratios_a)
    )
    return report, report.passed and report.stable(head_a, head_b)


def g_sandwich_holds(log_G: Callable[[int], float], ns: Sequence[int]) -> bool:
    """
    log G / loglog G <= g(n) <= 2 log G / loglog G wherever log G > e
    """
    for n in ns:
        lg = log_G(n)
        if lg <= math.e:
            continue
        q = lg / math.log(lg)
        g = math.ceil(q)
        if not q <= g <= 2 * q:
            return False
    return True


def strongly_dominates(
    f_log: Callable[[float], float],
    g_log: Callable[[float], float],
    C: float,
    ns: Sequence[int],
) -> bool:
    """
    g(n) <= f(C n) at every sampled n, non-integer arguments rounded up
    """
    return all(g_log(n) <= f_log(math.ceil(C * n)) + 1e-9 for n in ns)


def depth_upper(ctx: GroupContext, w: str) -> LogValue | None:
    """
    Order of the smallest coordinate group in which w survives, or None
    for a trivial word
    """
    if is_trivial(ctx, w):
        return None
    m0 = cutoff(ctx, len(w))
    for m in range(1, m0 + 1):
        if not coordinate_eval(ctx, w, m).is_identity():
            return alt_order(ctx.d(m))
    # nontrivial wreath image survives at every spread coordinate
    assert not w_eval(w).is_identity()
    return alt_order(ctx.d(m0 + 1))


def trivial_chain_check(ctx: GroupContext, n: int, ball_size: int) -> bool:
    """
    Proven bounds respect F(n) <= R(n) <= F(2n)^(|B(n)|^2)
    """
    rf = rf_upper(ctx, n).magnitude
    full = full_rf_upper(ctx, n).magnitude
    top = ball_size**2 * rf_upper(ctx, 2 * n).magnitude
    return rf <= full + 1e-9 and full <= top + 1e-9


def exact_factorial_chain(ctx: GroupContext, N: int) -> list[int]:
    """
    n <= N where f(n)!/2 <= d(n)!/2 <= (2 f(n))! fails, in exact integers
    """
    bad = []
    for n in range(1, N + 1):
        f, d = ctx.seqs.f_of(n), ctx.d(n)
        alt = math.factorial(d) // 2
        if not math.factorial(f) // 2 <= alt <= math.factorial(2 * f):
            bad.append(n)
    return bad

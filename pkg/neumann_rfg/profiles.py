"""
Growth profiles: the target function F (natural-log domain) and the
constants the sequence construction reads from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

E_TO_E = math.exp(math.e)


class ProfileError(ValueError):
    """
    Raised when a profile is malformed or asked for a value it cannot give
    """


class ProfileTooSmallError(ProfileError):
    """
    Raised when log F(n + C2) <= e, so log log F is not above 1
    """

    def __init__(self, n: int, log_f: float) -> None:
        self.n = n
        self.log_f = log_f
        super().__init__(n, log_f)

    def __str__(self) -> str:
        return (
            f"Profile too small at n={self.n}: log F(n + C2) = {self.log_f:.6g}"
            " must exceed e"
        )


class ProfileRangeError(ProfileError):
    """
    Raised when a table profile is asked for an argument past its end
    """


class ProfileKind(str, Enum):
    TOY = "toy"
    BUILTIN = "builtin"
    TABLE = "table"


@dataclass(frozen=True)
class GrowthProfile:
    """
    builtin: log F(x) = c x log(x)^2 loglog(x)^(1+eps), x clamped to >= e^e.
    table: log F(x) = log_f_table[ceil(x) - 1].
    toy: f given directly, f(n) = f_scale * n + f_offset or f_table[n - 1].

    For every kind F(x) = 1 when x < 1.
    """

    kind: ProfileKind
    c: float = 1.0
    epsilon: float = 1.0
    C0: float = 1.0
    C1: float = 1.0
    C2: float = 0.0
    f_scale: int = 16
    f_offset: int = 1
    f_table: tuple[int, ...] | None = None
    log_f_table: tuple[float, ...] | None = None
    q_offset: int = 0

    def __post_init__(self) -> None:
        if self.kind is ProfileKind.TABLE and not self.log_f_table:
            raise ProfileError("Table profiles need log_f_table")
        if self.kind is ProfileKind.BUILTIN and (self.c <= 0 or self.epsilon <= 0):
            raise ProfileError("Builtin profiles need c > 0 and epsilon > 0")
        if self.q_offset < 0:
            raise ProfileError("q_offset must be nonnegative")

    @property
    def is_toy(self) -> bool:
        return self.kind is ProfileKind.TOY

    @property
    def has_log_f(self) -> bool:
        return not self.is_toy

    def covers(self, x: float) -> bool:
        """
        True if log F(x) can be evaluated
        """
        if self.is_toy:
            return False
        if self.log_f_table is None:
            return True
        return math.ceil(x) <= len(self.log_f_table)

    def log_F(self, x: float) -> float:
        if self.is_toy:
            raise ProfileError("Toy profiles give f directly and have no log F")
        if x < 1:
            return 0.0
        if self.kind is ProfileKind.BUILTIN:
            xx = max(x, E_TO_E)
            log_x = math.log(xx)
            return self.c * xx * log_x**2 * math.log(log_x) ** (1 + self.epsilon)
        assert self.log_f_table is not None
        idx = math.ceil(x) - 1
        if idx >= len(self.log_f_table):
            raise ProfileRangeError(
                f"log F table has {len(self.log_f_table)} entries, {x} requested"
            )
        return self.log_f_table[idx]

    def f_of(self, n: int) -> int:
        """
        f(n) = ceil(log F(n + C2) / log log F(n + C2)), or the toy value
        """
        if n < 1:
            raise ValueError(f"Indices start at 1, got {n}")
        if self.is_toy:
            if self.f_table is not None:
                if n > len(self.f_table):
                    raise ProfileRangeError(
                        f"f table has {len(self.f_table)} entries, {n} requested"
                    )
                return self.f_table[n - 1]
            return self.f_scale * n + self.f_offset
        y = self.log_F(n + self.C2)
        if y <= math.e:
            raise ProfileTooSmallError(n, y)
        return math.ceil(y / math.log(y))

    def q_of(self, n: int) -> int:
        return n + self.q_offset


def f_of(profile: GrowthProfile, n: int) -> int:
    return profile.f_of(n)


TOY_PROFILE = GrowthProfile(ProfileKind.TOY, C0=1.0, C1=1.0, C2=0.0)
BUILTIN_PROFILE = GrowthProfile(ProfileKind.BUILTIN, c=1.0, epsilon=1.0, C2=256.0)

NAMED_PROFILES: dict[str, GrowthProfile] = {
    "toy": TOY_PROFILE,
    "builtin": BUILTIN_PROFILE,
}


def sample_points(limit: int, dense_up_to: int = 64) -> list[int]:
    """
    Every n up to dense_up_to, then a geometric sample up to limit
    """
    points = list(range(1, min(limit, dense_up_to) + 1))
    n = float(dense_up_to)
    while n < limit:
        n *= 1.25
        points.append(min(limit, int(n)))
    return sorted(set(points))


def _loglog(n: float) -> float:
    return math.log(math.log(n))


def _failures(ns: Iterable[int], holds: Callable[[int], bool]) -> list[int]:
    return [n for n in ns if not holds(n)]


def hypothesis_a_failures(profile: GrowthProfile, ns: Sequence[int]) -> list[int]:
    """
    n where log F(n) >= c n log(n)^2 loglog(n)^(1+eps) fails; n >= 3 only
    """

    def holds(n: int) -> bool:
        rhs = profile.c * n * math.log(n) ** 2 * _loglog(n) ** (1 + profile.epsilon)
        return profile.log_F(n) >= rhs * (1 - 1e-12)

    return _failures((n for n in ns if n >= 3), holds)


def hypothesis_b_failures(
    profile: GrowthProfile, ns: Sequence[int], C1: float = 2.0, C2: float = 2.0
) -> list[int]:
    """
    n where F(n)^C1 <= F(C2 n) fails
    """
    return _failures(
        ns, lambda n: C1 * profile.log_F(n) <= profile.log_F(C2 * n) * (1 + 1e-12)
    )


def hypothesis_b_prime_failures(
    profile: GrowthProfile, ns: Sequence[int], C: float = 2.0
) -> list[int]:
    """
    n where F(n)^n <= F(C n) fails
    """
    return _failures(
        ns, lambda n: n * profile.log_F(n) <= profile.log_F(C * n) * (1 + 1e-12)
    )


def loglog_bound_failures(profile: GrowthProfile, ns: Sequence[int]) -> list[int]:
    """
    n where loglog F(n) >= log(n)^2 + log(c) fails; implied by (b')
    """

    def holds(n: int) -> bool:
        log_f = profile.log_F(n)
        if log_f <= 0:
            return False
        return math.log(log_f) >= math.log(n) ** 2 + math.log(profile.c) - 1e-9

    return _failures(ns, holds)


def f_lower_bound_failures(profile: GrowthProfile, ns: Sequence[int]) -> list[int]:
    """
    n where f(n) >= C1 n log(n) loglog(n)^(1+eps/2) + C1 fails; n >= 3 only
    """

    def holds(n: int) -> bool:
        rhs = (
            profile.C1 * n * math.log(n) * _loglog(n) ** (1 + profile.epsilon / 2)
            + profile.C1
        )
        return profile.f_of(n) >= rhs

    return _failures((n for n in ns if n >= 3), holds)


def is_nondecreasing(values: Sequence[float]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))

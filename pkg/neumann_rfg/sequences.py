"""
The sequences f -> d -> q -> r, built lazily and certified index by index.
"""
from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from neumann_rfg.checks import Check, CheckReport, CheckResult
from neumann_rfg.primes import is_prime, next_prime
from neumann_rfg.profiles import (
    E_TO_E,
    GrowthProfile,
    ProfileKind,
    f_lower_bound_failures,
    hypothesis_a_failures,
    hypothesis_b_failures,
    hypothesis_b_prime_failures,
    is_nondecreasing,
    loglog_bound_failures,
    sample_points,
)

logger = logging.getLogger(__name__)

# candidates examined per vectorized pass of the greedy scan
_SCAN_CHUNK = 64


class DivisorTooSmallError(Exception):
    """
    Raised when d(n) < 16n, so the greedy construction of r(n) has no
    counting guarantee
    """

    def __init__(self, n: int, d: int) -> None:
        self.n = n
        self.d = d
        super().__init__(n, d)

    def __str__(self) -> str:
        return f"d({self.n}) = {self.d} is below 16 * {self.n} = {16 * self.n}"


class NoAdmissibleResidueError(Exception):
    """
    Raised when no k in (q(n), q(n) + 17n - 1] avoids every forbidden
    residue
    """

    def __init__(self, n: int, q: int, window: int) -> None:
        self.n = n
        self.q = q
        self.window = window
        super().__init__(n, q, window)

    def __str__(self) -> str:
        return (
            f"No admissible r({self.n}) in ({self.q}, {self.q + self.window}];"
            " the profile's divisors are too small for the counting bound"
        )


class SequenceInvariantError(Exception):
    """
    Raised when a materialized value breaks one of the sequence invariants
    """


@dataclass(frozen=True)
class Certificate:
    n: int
    f: int
    d: int
    q: int
    r: int
    d_prime: bool
    bertrand_ok: bool
    q_ok: bool
    r_window_ok: bool
    r_third_ok: bool
    divisor_ok: bool
    pairwise_ok: bool

    @property
    def all_ok(self) -> bool:
        return all(
            (
                self.d_prime,
                self.bertrand_ok,
                self.q_ok,
                self.r_window_ok,
                self.r_third_ok,
                self.divisor_ok,
                self.pairwise_ok,
            )
        )


def forbidden_mask(
    ks: np.ndarray, r_prev: np.ndarray, d_prev: np.ndarray, d_n: int
) -> np.ndarray:
    """
    True for candidates k that clash with an earlier (r(m), d(m)):
    k = +-r(m), +-2r(m) mod d(m), or r(m) = +-k, +-2k mod d(n).
    """
    bad = np.zeros(ks.shape, dtype=bool)
    if r_prev.size == 0:
        return bad
    k = ks[None, :]
    d_m = d_prev[:, None]
    r_m = r_prev[:, None]
    k_mod = k % d_m
    for mult in (1, -1, 2, -2):
        bad |= ((k_mod - mult * r_m) % d_m == 0).any(axis=0)
    r_mod_n = r_m % d_n
    for mult in (1, -1, 2, -2):
        bad |= ((mult * k - r_mod_n) % d_n == 0).any(axis=0)
    return bad


def pairwise_clash(r_l: int, r_m: int, d_m: int) -> bool:
    """
    True if r(l) = +-r(m) or +-2r(m) mod d(m)
    """
    return any((r_l - mult * r_m) % d_m == 0 for mult in (1, -1, 2, -2))


class SequenceSet:
    """
    Memoized f, d, q, r for one profile.

    Values are appended under a lock and never change afterwards, so
    readers of an already materialized index need no synchronisation.
    """

    def __init__(self, profile: GrowthProfile) -> None:
        self.profile = profile
        self._lock = threading.RLock()
        self._f: list[int] = []
        self._d: list[int] = []
        self._r: list[int] = []
        self._certificates: list[Certificate] = []

    @property
    def materialized_r(self) -> int:
        return len(self._r)

    def f_of(self, n: int) -> int:
        self._extend_d(n)
        return self._f[n - 1]

    def d_of(self, n: int) -> int:
        self._extend_d(n)
        return self._d[n - 1]

    def q_of(self, n: int) -> int:
        return self.profile.q_of(n)

    def r_of(self, n: int) -> int:
        self._extend_r(n)
        return self._r[n - 1]

    def certificate(self, n: int) -> Certificate:
        self._extend_r(n)
        return self._certificates[n - 1]

    def materialize(self, n: int) -> None:
        self._extend_r(n)

    def _extend_d(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"Indices start at 1, got {n}")
        if n <= len(self._d):
            return
        with self._lock:
            while len(self._d) < n:
                m = len(self._d) + 1
                f = self.profile.f_of(m)
                if self._f and f < self._f[-1]:
                    raise SequenceInvariantError(
                        f"f decreases at {m}: {self._f[-1]} > {f}"
                    )
                if f < 3:
                    raise ValueError(f"d(n) needs f(n) >= 3, got f({m}) = {f}")
                d = next_prime(max(f, 5))
                assert f <= d <= 2 * f, f"Bertrand bound broken at {m}: f={f}, d={d}"
                self._f.append(f)
                self._d.append(d)
                logger.debug("f(%d) = %d, d(%d) = %d", m, f, m, d)

    def _extend_r(self, n: int) -> None:
        if n < 1:
            raise ValueError(f"Indices start at 1, got {n}")
        if n <= len(self._r):
            return
        self._extend_d(n)
        with self._lock:
            while len(self._r) < n:
                m = len(self._r) + 1
                r = self._next_r(m)
                self._r.append(r)
                self._certificates.append(self._certify(m, r))
                logger.debug("r(%d) = %d", m, r)

    def _next_r(self, n: int) -> int:
        d_n = self._d[n - 1]
        q_n = self.q_of(n)
        if d_n < 16 * n:
            raise DivisorTooSmallError(n, d_n)
        if not n <= q_n <= d_n / 4:
            raise SequenceInvariantError(f"q({n}) = {q_n} outside [{n}, {d_n}/4]")
        # nothing is forbidden at n = 1, so r(1) = q(1) + 1
        r = self._greedy_r(n, q_n, d_n)
        if not 3 * r < d_n:
            raise SequenceInvariantError(f"r({n}) = {r} is not below d({n})/3")
        return r

    def _greedy_r(self, n: int, q_n: int, d_n: int) -> int:
        window = 17 * n - 1
        r_prev = np.array(self._r, dtype=np.int64)
        d_prev = np.array(self._d[: n - 1], dtype=np.int64)
        for start in range(q_n + 1, q_n + window + 1, _SCAN_CHUNK):
            stop = min(start + _SCAN_CHUNK, q_n + window + 1)
            ks = np.arange(start, stop, dtype=np.int64)
            ok = ~forbidden_mask(ks, r_prev, d_prev, d_n)
            if ok.any():
                return int(ks[np.argmax(ok)])
        raise NoAdmissibleResidueError(n, q_n, window)

    def _certify(self, n: int, r: int) -> Certificate:
        f, d, q = self._f[n - 1], self._d[n - 1], self.q_of(n)
        pairwise = all(
            not pairwise_clash(self._r[m - 1], r, d)
            and not pairwise_clash(r, self._r[m - 1], self._d[m - 1])
            for m in range(1, n)
        )
        return Certificate(
            n=n,
            f=f,
            d=d,
            q=q,
            r=r,
            d_prime=d >= 5 and d % 2 == 1 and is_prime(d),
            bertrand_ok=f <= d <= 2 * f,
            q_ok=n <= q <= d / 4,
            r_window_ok=q < r < q + 17 * n,
            r_third_ok=3 * r < d,
            divisor_ok=d >= 16 * n,
            pairwise_ok=pairwise,
        )

    def rows(self, N: int) -> list[Certificate]:
        self._extend_r(N)
        return list(self._certificates[:N])


def f_of(seqs: SequenceSet, n: int) -> int:
    return seqs.f_of(n)


def d_of(seqs: SequenceSet, n: int) -> int:
    return seqs.d_of(n)


def r_of(seqs: SequenceSet, n: int) -> int:
    return seqs.r_of(n)


def pairwise_violations(seqs: SequenceSet, N: int) -> list[tuple[int, int]]:
    """
    Pairs (l, m), l != m <= N, with r(l) = +-r(m), +-2r(m) mod d(m)
    """
    seqs.materialize(N)
    r = np.array([seqs.r_of(n) for n in range(1, N + 1)], dtype=np.int64)
    d = np.array([seqs.d_of(n) for n in range(1, N + 1)], dtype=np.int64)
    # rows l, columns m
    clash = np.zeros((N, N), dtype=bool)
    for mult in (1, -1, 2, -2):
        clash |= (r[:, None] - mult * r[None, :]) % d[None, :] == 0
    np.fill_diagonal(clash, False)
    return [(int(l) + 1, int(m) + 1) for l, m in zip(*np.nonzero(clash))]


def c0_headroom(seqs: SequenceSet, N: int) -> float:
    """
    Largest C with d(n) >= C n log(n) loglog(n)^(1+eps) + C for 3 <= n <= N
    """
    eps = seqs.profile.epsilon
    ratios = [
        seqs.d_of(n) / (n * math.log(n) * math.log(math.log(n)) ** (1 + eps) + 1)
        for n in range(3, N + 1)
    ]
    return min(ratios, default=math.inf)


def validate_hypotheses(seqs: SequenceSet, N: int) -> CheckReport:
    """
    Check (i) to (iii), d(n) >= 16n, Bertrand, monotonicity and the series
    bound on indices <= N.

    Conditions a toy profile is not built to satisfy are advisory for it.
    """
    profile = seqs.profile
    advisory = profile.is_toy
    report = CheckReport()
    ns = range(1, N + 1)

    def odd_prime() -> int:
        bad = [n for n in ns if not (seqs.d_of(n) >= 5 and is_prime(seqs.d_of(n)))]
        assert not bad, f"d(n) not an odd prime >= 5 at {bad[:5]}"
        return N

    def growth_ii() -> int:
        eps = profile.epsilon
        C = profile.C0
        bad = [
            n
            for n in ns
            if n >= 3
            and seqs.d_of(n)
            < C * n * math.log(n) * math.log(math.log(n)) ** (1 + eps) + C
        ]
        assert not bad, f"d(n) below C0 n log n loglog^(1+eps) n + C0 at {bad[:5]}"
        return N

    def q_range() -> int:
        bad = [n for n in ns if not n <= seqs.q_of(n) <= seqs.d_of(n) / 4]
        assert not bad, f"q(n) outside [n, d(n)/4] at {bad[:5]}"
        return N

    def divisor() -> int:
        bad = [n for n in ns if seqs.d_of(n) < 16 * n]
        assert not bad, f"d(n) < 16n at {bad[:5]}"
        return N

    def bertrand() -> int:
        bad = [n for n in ns if not seqs.f_of(n) <= seqs.d_of(n) <= 2 * seqs.f_of(n)]
        assert not bad, f"f(n) <= d(n) <= 2f(n) fails at {bad[:5]}"
        return N

    def monotone() -> int:
        f = [seqs.f_of(n) for n in ns]
        d = [seqs.d_of(n) for n in ns]
        assert is_nondecreasing(f), "f is not nondecreasing"
        assert is_nondecreasing(d), "d is not nondecreasing"
        return N

    def series() -> int:
        total = math.fsum(1 / seqs.d_of(n) for n in ns)
        assert total < 1 / 16, f"sum of 1/d(m) = {total:.6f} is not below 1/16"
        return N

    def c0() -> int:
        headroom = c0_headroom(seqs, N)
        assert profile.C0 <= headroom, (
            f"C0 = {profile.C0} exceeds the largest value the data supports,"
            f" {headroom:.4g}"
        )
        return N

    report.add(Check("odd_prime", odd_prime).run())
    report.add(Check("growth_ii", growth_ii, advisory=advisory).run())
    report.add(Check("q_range", q_range).run())
    report.add(Check("divisor_16n", divisor).run())
    report.add(Check("bertrand", bertrand).run())
    report.add(Check("monotone", monotone).run())
    report.add(Check("series", series, advisory=advisory).run())
    report.add(Check("c0_headroom", c0, advisory=True).run())
    if not profile.is_toy:
        sample = [n for n in sample_points(N) if profile.covers(n + max(profile.C2, 0.0))]
        # below e^e the builtin log F is clamped flat
        floor = E_TO_E if profile.kind is ProfileKind.BUILTIN else 1.0
        doubling = [n for n in sample if n >= floor and profile.covers(2 * n)]
        for name, finder, ns, is_advisory in (
            ("hypothesis_a", hypothesis_a_failures, sample, False),
            ("f_lower_bound", f_lower_bound_failures, sample, False),
            ("hypothesis_b", hypothesis_b_failures, doubling, False),
            ("hypothesis_b_prime", hypothesis_b_prime_failures, doubling, True),
            ("loglog_bound", loglog_bound_failures, sample, True),
        ):
            report.add(_failures_check(name, finder, profile, ns, advisory=is_advisory))
    return report


def _failures_check(
    name: str,
    finder: Callable[[GrowthProfile, Sequence[int]], list[int]],
    profile: GrowthProfile,
    sample: Sequence[int],
    *,
    advisory: bool = False,
) -> CheckResult:
    def run() -> int:
        bad = finder(profile, sample)
        assert not bad, f"fails at n = {bad[:5]}"
        return len(sample)

    return Check(name, run, advisory=advisory).run()

"""
The verify command's checks and the row producers behind build, growth and
oracle.

Every check function returns the number of cases it examined and fails by
raising, so it can be wrapped in a Check.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import asdict
from typing import Any, Callable

import numpy as np

from neumann_rfg.budgets import Budget, measure, measure_start, perf_stats
from neumann_rfg.checks import Check, CheckReport
from neumann_rfg.configs import EnvelopeConfig, RunConfig, VerifyConfig
from neumann_rfg.growth_bounds import (
    depth_upper,
    envelope_report,
    exact_factorial_chain,
    full_rf_upper,
    g_sandwich_holds,
    log_factorial_exact,
    log_factorial_lgamma,
    reachable_lower_points,
    rf_upper,
    stirling_check,
    stirling_sandwich_failures,
    strongly_dominates,
    trivial_chain_check,
)
from neumann_rfg.neumann_groups import (
    BallBudgetExceeded,
    GroupContext,
    SpreadAssertionFailed,
    WitnessCheckFailed,
    ball,
    commuting_trivial,
    coordinate_eval,
    coordinate_eval_sparse,
    injectivity_radius,
    is_trivial,
    is_trivial_by_scan,
    pairwise_ball_size,
    prefix_images,
    reconstruct_from_lamps,
    reconstruct_sparse,
    rho_injective,
    simple_subgroup_premises,
    witness,
)
from neumann_rfg.permutations import make_generators
from neumann_rfg.primes import next_prime, primes_below, smallest_prime_at_least
from neumann_rfg.profiles import GrowthProfile, ProfileError
from neumann_rfg.sequences import (
    DivisorTooSmallError,
    NoAdmissibleResidueError,
    SequenceInvariantError,
    SequenceSet,
    pairwise_violations,
    validate_hypotheses,
)
from neumann_rfg.stabilizer_chains import build_chain, group_order, verify_alt_generation
from neumann_rfg.words import enumerate_reduced, free_reduce, random_reduced
from neumann_rfg.wreaths import w_eval

logger = logging.getLogger(__name__)

DOMAIN_ERRORS: tuple[type[Exception], ...] = (
    BallBudgetExceeded,
    DivisorTooSmallError,
    NoAdmissibleResidueError,
    ProfileError,
    SequenceInvariantError,
    SpreadAssertionFailed,
    WitnessCheckFailed,
)

# (d, r1, r2) triples checked besides the profile's own coordinates
GENERATION_TRIPLES = ((5, 2, 2), (7, 2, 3), (11, 3, 3), (13, 4, 4))

# longest word whose normal form is also checked by dense composition
RECONSTRUCTION_DENSE_LEN = 6


def spread_radius(ctx: GroupContext, m: int) -> int:
    """
    Largest word length n for which coordinate m is spread out
    """
    r = ctx.r(m)
    return (min(r, ctx.d(m) - 2 * r) - 1) // 2


def check_generation(ctx: GroupContext, cfg: VerifyConfig) -> int:
    """
    The first coordinates generate their alternating groups and hold their
    witnesses, plus the fixed triples
    """
    simple_subgroup_premises(ctx, cfg.generation_indices, cfg.witness_scan)
    for d, r1, r2 in GENERATION_TRIPLES:
        assert verify_alt_generation(d, r1, r2), f"({d}, {r1}, {r2}) is not Alt"
    order = group_order(build_chain(make_generators(11, 3, 3)))
    assert order == math.factorial(11) // 2, f"Order for d=11 is {order}"
    return cfg.generation_indices + len(GENERATION_TRIPLES)


def check_building_r(seqs: SequenceSet, cfg: VerifyConfig) -> int:
    N = cfg.building_r_n
    rows = seqs.rows(N)
    bad = [c.n for c in rows if not c.all_ok]
    assert not bad, f"Uncertified indices {bad[:5]}"
    clashes = pairwise_violations(seqs, N)
    assert not clashes, f"Congruence clashes at {clashes[:5]}"
    assert seqs.r_of(1) == 2, f"r(1) = {seqs.r_of(1)}"
    return 4 * N * N


def check_commuting(ctx: GroupContext, cfg: VerifyConfig) -> int:
    N = cfg.commuting_n
    for m in range(1, N + 1):
        for n in range(1, N + 1):
            assert commuting_trivial(ctx, m, n) == (m != n), (
                f"Commutator at m={m}, n={n} should be"
                f" {'trivial' if m != n else 'nontrivial'}"
            )
    return N * N


def check_locality(ctx: GroupContext, cfg: VerifyConfig, seed: int) -> int:
    """
    At spread coordinates a word is trivial exactly when its wreath image
    is: every word up to locality_max_len on dense images, then seeded
    random words on the sparse evaluator.
    """
    cases = 0
    wreath_trivial: dict[str, bool] = {}
    for m in range(1, cfg.locality_max_m + 1):
        max_len = min(cfg.locality_max_len, spread_radius(ctx, m))
        if max_len < 1:
            continue
        ident = np.arange(ctx.d(m), dtype=np.int32)
        for word, images in prefix_images(ctx, m, max_len):
            if word not in wreath_trivial:
                wreath_trivial[word] = w_eval(word).is_identity()
            perm_trivial = bool(np.array_equal(images, ident))
            assert perm_trivial == wreath_trivial[word], (
                f"{word!r} at m={m}: permutation trivial {perm_trivial},"
                f" wreath trivial {wreath_trivial[word]}"
            )
            cases += 1
    rng = random.Random(seed)
    radii = {m: spread_radius(ctx, m) for m in range(1, cfg.random_max_m + 1)}
    for _ in range(cfg.random_words):
        w = random_reduced(rng.randint(0, cfg.random_max_len), rng)
        trivial = w_eval(w).is_identity()
        for m, radius in radii.items():
            if radius < len(w):
                continue
            assert coordinate_eval_sparse(ctx, w, m).is_identity() == trivial, (
                f"{w!r} at m={m} disagrees with its wreath image"
            )
            cases += 1
    return cases


def check_reconstruction(ctx: GroupContext, cfg: VerifyConfig, seed: int) -> int:
    """
    The lamp normal form reproduces direct composition at spread coordinates:
    every word up to locality_max_len, composed densely up to
    RECONSTRUCTION_DENSE_LEN letters and sparsely beyond, then seeded random
    words on the sparse evaluator.
    """
    cases = 0
    radii = {m: spread_radius(ctx, m) for m in range(1, cfg.locality_max_m + 1)}
    for w in enumerate_reduced(cfg.locality_max_len):
        for m, radius in radii.items():
            if radius < len(w):
                continue
            if len(w) <= RECONSTRUCTION_DENSE_LEN:
                same = reconstruct_from_lamps(ctx, w, m) == coordinate_eval(ctx, w, m)
            else:
                same = reconstruct_sparse(ctx, w, m).same_as(coordinate_eval_sparse(ctx, w, m))
            assert same, f"Normal form of {w!r} differs at m={m}"
            cases += 1
    rng = random.Random(seed + 1)
    radii = {m: spread_radius(ctx, m) for m in range(1, cfg.random_max_m + 1)}
    for _ in range(cfg.reconstruction_words):
        w = random_reduced(rng.randint(0, cfg.random_max_len), rng)
        for m, radius in radii.items():
            if radius < len(w):
                continue
            direct = coordinate_eval_sparse(ctx, w, m)
            assert reconstruct_sparse(ctx, w, m).same_as(direct), (
                f"Sparse normal form of {w!r} differs at m={m}"
            )
            cases += 1
    return cases


def check_witness(ctx: GroupContext, cfg: VerifyConfig) -> int:
    for m in range(1, cfg.witness_m + 1):
        w = witness(ctx, m, cfg.witness_scan)
        assert free_reduce(w) == w, f"Witness for m={m} is not reduced"
        assert len(w) == 4 + 4 * ctx.r(m), f"Witness for m={m} has length {len(w)}"
    return cfg.witness_m


def check_oracle_equivalence(ctx: GroupContext, cfg: VerifyConfig) -> int:
    cases = 0
    for n in range(1, cfg.oracle_n + 1):
        size = len(ball(ctx, n))
        pairwise = pairwise_ball_size(ctx, n)
        assert size == pairwise, f"|ball({n})| = {size}, pairwise oracle {pairwise}"
        assert rho_injective(ctx, n), f"Projection to 1..{2 * n} not injective on ball({n})"
        cases += 1
    top = 2 * cfg.oracle_n
    radius = injectivity_radius(ctx, top, cfg.oracle_n)
    assert radius == cfg.oracle_n, f"Coordinates 1..{top} separate balls only up to radius {radius}"
    for w in enumerate_reduced(cfg.locality_max_len):
        assert is_trivial(ctx, w) == is_trivial_by_scan(ctx, w, cfg.witness_scan), (
            f"Word problem and scan oracle disagree on {w!r}"
        )
        cases += 1
    return cases


def check_bounds(
    ctx: GroupContext, profile: GrowthProfile, N: int, cfg: VerifyConfig, env: EnvelopeConfig
) -> int:
    table = envelope_report(ctx, profile, N, env.c1, env.c2, env.c3)
    bad = table.violations()
    assert not bad, f"lower > upper at {[(row.kind, row.n) for row in bad[:5]]}"
    points = reachable_lower_points(ctx, max(1, N // 4))
    assert all(p.consistent for p in points), "A lower point exceeds rf_upper"
    reached = max((row.n for row in table.rows), default=0)
    assert strongly_dominates(
        lambda n: full_rf_upper(ctx, int(n)).magnitude,
        lambda n: rf_upper(ctx, int(n)).magnitude,
        1,
        range(1, reached + 1),
    ), "full_rf_upper falls below rf_upper"
    cases = len(table.rows) + len(points) + reached
    for n in range(1, cfg.oracle_n + 1):
        elements = ball(ctx, n)
        assert trivial_chain_check(ctx, n, len(elements)), f"Bound chain fails at n={n}"
        cases += 1
        if n > 3:
            continue
        upper = rf_upper(ctx, n).magnitude
        for word, _ in elements[1:]:
            depth = depth_upper(ctx, word)
            assert depth is not None, f"{word!r} is a ball representative but trivial"
            assert depth.magnitude <= upper + 1e-9, f"Depth of {word!r} above rf_upper({n})"
            cases += 1
    return cases


def check_exact_factorials(ctx: GroupContext, cfg: VerifyConfig) -> int:
    bad = exact_factorial_chain(ctx, cfg.exact_factorial_n)
    assert not bad, f"f!/2 <= d!/2 <= (2f)! fails at {bad[:5]}"
    for n in range(0, 2001):
        exact, approx = log_factorial_exact(n), log_factorial_lgamma(n)
        assert abs(exact - approx) <= 1e-9 * max(1.0, exact), (
            f"log {n}! paths disagree: {exact} vs {approx}"
        )
    return cfg.exact_factorial_n + 2001


def _log_g_square(n: int) -> float:
    return float(n * n)


def check_stirling(cfg: VerifyConfig) -> int:
    bad = stirling_sandwich_failures(cfg.stirling_limit)
    assert not bad, f"Stirling sandwich fails at {bad[:5]}"
    for K in (1, 2, 3):
        report, stable = stirling_check(_log_g_square, cfg.stirling_n, K)
        assert report.passed, f"Constants for K={K} are not finite"
        assert stable, f"Constants for K={K} grow over the tail: {report}"
    assert g_sandwich_holds(_log_g_square, range(1, cfg.stirling_n + 1))
    return cfg.stirling_limit + 3 * cfg.stirling_n


def check_bertrand(cfg: VerifyConfig) -> int:
    """
    Smallest prime >= x lies in [x, 2x) for every 3 <= x <= bertrand_limit,
    read off an independent sieve and spot-checked against next_prime
    """
    limit = cfg.bertrand_limit
    primes = primes_below(2 * limit)
    xs = np.arange(3, limit + 1, dtype=np.int64)
    ps = smallest_prime_at_least(xs, primes)
    bad = xs[(ps < xs) | (ps >= 2 * xs)]
    assert bad.size == 0, f"Bertrand window fails at {bad[:5].tolist()}"
    for x in range(3, limit + 1, 997):
        assert next_prime(x) == ps[x - 3], f"next_prime({x}) disagrees with the sieve"
    return int(xs.size)


def check_hypotheses(seqs: SequenceSet, cfg: VerifyConfig) -> int:
    report = validate_hypotheses(seqs, cfg.hypotheses_n)
    assert report.passed, f"Failed: {[r.name for r in report.failures]}"
    return len(report)


def verify_checks(config: RunConfig, seqs: SequenceSet) -> list[tuple[str, Callable[[], int]]]:
    ctx = GroupContext(seqs)
    cfg, seed = config.verify, config.seed
    profile = seqs.profile
    return [
        ("generation", lambda: check_generation(ctx, cfg)),
        ("building_r", lambda: check_building_r(seqs, cfg)),
        ("commuting", lambda: check_commuting(ctx, cfg)),
        ("locality", lambda: check_locality(ctx, cfg, seed)),
        ("reconstruction", lambda: check_reconstruction(ctx, cfg, seed)),
        ("witness", lambda: check_witness(ctx, cfg)),
        ("oracle_equivalence", lambda: check_oracle_equivalence(ctx, cfg)),
        ("bounds", lambda: check_bounds(ctx, profile, config.n, cfg, config.envelope)),
        ("exact_factorials", lambda: check_exact_factorials(ctx, cfg)),
        ("stirling", lambda: check_stirling(cfg)),
        ("bertrand", lambda: check_bertrand(cfg)),
        ("hypotheses", lambda: check_hypotheses(seqs, cfg)),
    ]


def run_verify(config: RunConfig, budget: Budget | None = None) -> CheckReport:
    """
    Run every verify check in order. Failures are collected; only an
    exhausted budget stops the run.
    """
    budget = budget or Budget(config.budget_ms)
    seqs = SequenceSet(config.profile.to_profile())
    report = CheckReport()
    measure_start()
    for name, func in verify_checks(config, seqs):
        report.add(Check(name, func, catch=DOMAIN_ERRORS).run())
        perf_stats["num_checks"] += 1
        budget.check(name)
    measure("total_verify")
    return report


def build_rows(seqs: SequenceSet, N: int, budget: Budget | None = None) -> list[dict[str, Any]]:
    rows = []
    measure_start()
    for n in range(1, N + 1):
        rows.append(asdict(seqs.certificate(n)))
        if budget is not None:
            budget.check(f"build row {n}")
    measure("total_build")
    return rows


def growth_rows(
    seqs: SequenceSet, N: int, env: EnvelopeConfig, budget: Budget | None = None
) -> list[dict[str, Any]]:
    measure_start()
    table = envelope_report(GroupContext(seqs), seqs.profile, N, env.c1, env.c2, env.c3)
    if budget is not None:
        budget.check("growth table")
    measure("total_growth")
    return [row.as_row() for row in table.rows]


def oracle_rows(
    seqs: SequenceSet, N: int, scan: int, budget: Budget | None = None
) -> list[dict[str, Any]]:
    ctx = GroupContext(seqs)
    rows = []
    measure_start()
    for n in range(1, N + 1):
        try:
            witness(ctx, n, scan)
            witness_ok = True
        except WitnessCheckFailed as err:
            logger.info("Witness for %d failed: %s", n, err)
            witness_ok = False
        rows.append(
            {
                "n": n,
                "ball_size": len(ball(ctx, n)),
                "pairwise_size": pairwise_ball_size(ctx, n),
                "injective_rho": rho_injective(ctx, n),
                "witness_ok": witness_ok,
            }
        )
        if budget is not None:
            budget.check(f"oracle row {n}")
    measure("total_oracle")
    return rows

"""
Command-line front end: build | verify | growth | oracle

Exit status is 0 when every check passes, 1 on a failed check or an
exhausted budget, and 2 on a usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence, TextIO

from pydantic import ValidationError

from neumann_rfg import verification
from neumann_rfg.budgets import MEASURE_TIMES, Budget, BudgetExceeded, perf_stats
from neumann_rfg.configs import Command, OutputFormat, RunConfig, load_config, named_profile
from neumann_rfg.neumann_groups import BallBudgetExceeded
from neumann_rfg.profiles import ProfileError
from neumann_rfg.sequences import (
    DivisorTooSmallError,
    NoAdmissibleResidueError,
    SequenceInvariantError,
    SequenceSet,
)
from neumann_rfg.type_util import MISSING, MISSING_TYPE

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

BUILD_COLUMNS = (
    "n",
    "f",
    "d",
    "q",
    "r",
    "d_prime",
    "bertrand_ok",
    "q_ok",
    "r_window_ok",
    "r_third_ok",
    "divisor_ok",
    "pairwise_ok",
)
VERIFY_COLUMNS = ("name", "passed", "cases", "detail")
GROWTH_COLUMNS = ("n", "kind", "lower_log", "upper_log", "log_F", "consistent", "in_envelope")
ORACLE_COLUMNS = ("n", "ball_size", "pairwise_size", "injective_rho", "witness_ok")

_RUN_FAILURES = (
    BallBudgetExceeded,
    BudgetExceeded,
    DivisorTooSmallError,
    NoAdmissibleResidueError,
    SequenceInvariantError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="neumann-rfg",
        description="Growth experiments on generalized Neumann groups",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for command in Command:
        sub = commands.add_parser(command.value)
        sub.add_argument("--config", default=MISSING, help="JSON config file")
        sub.add_argument("--profile", default=MISSING, help="toy or builtin")
        sub.add_argument("--n", type=int, default=MISSING, dest="n")
        sub.add_argument("--seed", type=int, default=MISSING)
        sub.add_argument(
            "--format", choices=[f.value for f in OutputFormat], default=MISSING
        )
        sub.add_argument("--budget-ms", type=int, default=MISSING, dest="budget_ms")
        sub.add_argument(
            "--log-level",
            default="WARNING",
            choices=["DEBUG", "INFO", "WARNING", "ERROR"],
            dest="log_level",
        )
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    Config file first, then each flag that was given
    """
    config = RunConfig() if isinstance(args.config, MISSING_TYPE) else load_config(args.config)
    overrides: dict[str, Any] = {"command": args.command}
    for name in ("n", "seed", "format", "budget_ms"):
        value = getattr(args, name)
        if not isinstance(value, MISSING_TYPE):
            overrides[name] = value
    if not isinstance(args.profile, MISSING_TYPE):
        overrides["profile"] = named_profile(args.profile).dict()
    return RunConfig.parse_obj({**config.dict(), **overrides})


def _tsv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit(rows: Sequence[dict[str, Any]], columns: Sequence[str], fmt: OutputFormat, out: TextIO) -> None:
    if fmt is OutputFormat.JSON:
        for row in rows:
            out.write(json.dumps({c: row[c] for c in columns}, sort_keys=True) + "\n")
        return
    out.write("\t".join(columns) + "\n")
    for row in rows:
        out.write("\t".join(_tsv_value(row[c]) for c in columns) + "\n")


def cmd_build(config: RunConfig, budget: Budget, out: TextIO) -> int:
    seqs = SequenceSet(config.profile.to_profile())
    rows = verification.build_rows(seqs, config.n, budget)
    emit(rows, BUILD_COLUMNS, config.format, out)
    certified = all(all(row[c] for c in BUILD_COLUMNS[5:]) for row in rows)
    return EXIT_OK if certified else EXIT_CHECK_FAILED


def cmd_verify(config: RunConfig, budget: Budget, out: TextIO) -> int:
    report = verification.run_verify(config, budget)
    emit([r.as_row() for r in report], VERIFY_COLUMNS, config.format, out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_growth(config: RunConfig, budget: Budget, out: TextIO) -> int:
    seqs = SequenceSet(config.profile.to_profile())
    rows = verification.growth_rows(seqs, config.n, config.envelope, budget)
    emit(rows, GROWTH_COLUMNS, config.format, out)
    return EXIT_OK if all(row["consistent"] for row in rows) else EXIT_CHECK_FAILED


def cmd_oracle(config: RunConfig, budget: Budget, out: TextIO) -> int:
    seqs = SequenceSet(config.profile.to_profile())
    rows = verification.oracle_rows(seqs, config.n, config.verify.witness_scan, budget)
    emit(rows, ORACLE_COLUMNS, config.format, out)
    ok = all(
        row["ball_size"] == row["pairwise_size"] and row["injective_rho"] and row["witness_ok"]
        for row in rows
    )
    return EXIT_OK if ok else EXIT_CHECK_FAILED


COMMANDS = {
    Command.BUILD: cmd_build,
    Command.VERIFY: cmd_verify,
    Command.GROWTH: cmd_growth,
    Command.ORACLE: cmd_oracle,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=args.log_level, stream=sys.stderr)
    try:
        config = resolve_config(args)
        config.profile.to_profile()
    except (ValidationError, ValueError, OSError) as err:
        # ProfileError and json.JSONDecodeError are ValueErrors
        print(f"neumann-rfg: configuration error: {err}", file=sys.stderr)
        return EXIT_USAGE
    out = out or sys.stdout
    try:
        status = COMMANDS[config.command](config, Budget(config.budget_ms), out)
    except _RUN_FAILURES as err:
        print(f"neumann-rfg: {err}", file=sys.stderr)
        status = EXIT_CHECK_FAILED
    except ProfileError as err:
        print(f"neumann-rfg: {err}", file=sys.stderr)
        status = EXIT_USAGE
    if MEASURE_TIMES:
        logger.debug("perf_stats: %s", perf_stats)
    return status


if __name__ == "__main__":
    sys.exit(main())

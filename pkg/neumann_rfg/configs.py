"""
Run configuration: a JSON file plus command-line overrides
"""
from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, validator

from neumann_rfg.profiles import GrowthProfile, ProfileError, ProfileKind


class Command(str, Enum):
    BUILD = "build"
    VERIFY = "verify"
    GROWTH = "growth"
    ORACLE = "oracle"


class OutputFormat(str, Enum):
    TSV = "tsv"
    JSON = "json"


class _Strict(BaseModel):
    class Config:
        extra = "forbid"


class ProfileConfig(_Strict):
    kind: ProfileKind = ProfileKind.TOY
    c: float = 1.0
    epsilon: float = 1.0
    C0: float = 1.0
    C1: float = 1.0
    C2: float = 0.0
    f_scale: int = 16
    f_offset: int = 1
    f_table: Optional[list[int]] = None
    log_f_table: Optional[list[float]] = None
    q_offset: int = 0

    def to_profile(self) -> GrowthProfile:
        return GrowthProfile(
            kind=self.kind,
            c=self.c,
            epsilon=self.epsilon,
            C0=self.C0,
            C1=self.C1,
            C2=self.C2,
            f_scale=self.f_scale,
            f_offset=self.f_offset,
            f_table=None if self.f_table is None else tuple(self.f_table),
            log_f_table=None if self.log_f_table is None else tuple(self.log_f_table),
            q_offset=self.q_offset,
        )


NAMED_PROFILE_CONFIGS: dict[str, ProfileConfig] = {
    "toy": ProfileConfig(),
    "builtin": ProfileConfig(kind=ProfileKind.BUILTIN, c=1.0, epsilon=1.0, C2=256.0),
}


def named_profile(name: str) -> ProfileConfig:
    try:
        return NAMED_PROFILE_CONFIGS[name].copy(deep=True)
    except KeyError:
        raise ProfileError(
            f"Unknown profile {name!r}, expected one of {sorted(NAMED_PROFILE_CONFIGS)}"
        ) from None


class EnvelopeConfig(_Strict):
    c1: float = 72.0
    c2: float = 256.0
    c3: float = 4.0


class VerifyConfig(_Strict):
    """
    Sizes for each verify check
    """

    generation_indices: int = 10
    building_r_n: int = 200
    commuting_n: int = 50
    locality_max_len: int = 8
    locality_max_m: int = 24
    random_words: int = 10_000
    random_max_len: int = 64
    random_max_m: int = 130
    reconstruction_words: int = 10_000
    witness_m: int = 25
    witness_scan: int = 100
    oracle_n: int = 4
    exact_factorial_n: int = 20
    stirling_limit: int = 100_000
    stirling_n: int = 1_000
    bertrand_limit: int = 1_000_000
    hypotheses_n: int = 100


class RunConfig(_Strict):
    command: Command = Command.VERIFY
    profile: ProfileConfig = ProfileConfig()
    n: int = 20
    seed: int = 0
    format: OutputFormat = OutputFormat.TSV
    budget_ms: Optional[int] = None
    envelope: EnvelopeConfig = EnvelopeConfig()
    verify: VerifyConfig = VerifyConfig()

    @validator("profile", pre=True)
    def _resolve_named_profile(cls, value: Any) -> Any:
        if isinstance(value, str):
            return named_profile(value)
        return value

    @validator("n")
    def _positive_n(cls, value: int) -> int:
        if value < 1:
            raise ValueError("n must be at least 1")
        return value

    @validator("budget_ms")
    def _positive_budget(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value <= 0:
            raise ValueError("budget_ms must be positive")
        return value


def load_config(path: str | Path) -> RunConfig:
    return RunConfig.parse_file(path)

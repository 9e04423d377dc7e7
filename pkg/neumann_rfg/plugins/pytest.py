"""
Shared fixtures. Sequence sets memoize, so the session-scoped ones are
built once and extended lazily by whichever test needs more indices.
"""
import pytest

from neumann_rfg.neumann_groups import GroupContext
from neumann_rfg.profiles import BUILTIN_PROFILE, TOY_PROFILE, GrowthProfile
from neumann_rfg.sequences import SequenceSet


@pytest.fixture(scope="session")
def toy_profile() -> GrowthProfile:
    return TOY_PROFILE


@pytest.fixture(scope="session")
def toy_sequences(toy_profile: GrowthProfile) -> SequenceSet:
    return SequenceSet(toy_profile)


@pytest.fixture(scope="session")
def toy_context(toy_sequences: SequenceSet) -> GroupContext:
    return GroupContext(toy_sequences)


@pytest.fixture(scope="session")
def builtin_profile() -> GrowthProfile:
    return BUILTIN_PROFILE


@pytest.fixture(scope="session")
def builtin_sequences(builtin_profile: GrowthProfile) -> SequenceSet:
    return SequenceSet(builtin_profile)

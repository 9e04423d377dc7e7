from .configs import RunConfig
from .neumann_groups import GroupContext, ball, is_trivial, witness
from .permutations import Permutation
from .profiles import GrowthProfile
from .sequences import SequenceSet
from .words import Word

__all__ = [
    "GroupContext",
    "GrowthProfile",
    "Permutation",
    "RunConfig",
    "SequenceSet",
    "Word",
    "ball",
    "is_trivial",
    "witness",
]

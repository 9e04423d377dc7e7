from typing import Literal

import numpy as np
import numpy.typing as npt

Letter = Literal["a", "A", "b", "B"]

# letter order used for enumeration and for the inverse table
LETTERS: tuple[Letter, ...] = ("a", "A", "b", "B")

INVERSE_LETTER: dict[str, str] = {"a": "A", "A": "a", "b": "B", "B": "b"}

ImageArray = npt.NDArray[np.int32]


class MISSING_TYPE:
    """
    Class to indicate a flag that was not given on the command line
    """

    def __repr__(self) -> str:
        return "MISSING"


MISSING = MISSING_TYPE()

__all__ = ["INVERSE_LETTER", "LETTERS", "Letter", "ImageArray", "MISSING", "MISSING_TYPE"]

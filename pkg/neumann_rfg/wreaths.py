"""
Arithmetic in the lamplighter group C3 wr Z.

An element is a finitely supported lamp map Z -> Z/3 together with an
integer shift. The shift generator is (no lamps, 1) and the lamp generator
is ({0: 1}, 0), matching the letters a and b of a Word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

Lamps = tuple[tuple[int, int], ...]


def _canonical(lamps: Mapping[int, int]) -> Lamps:
    return tuple(sorted((pos, val % 3) for pos, val in lamps.items() if val % 3))


@dataclass(frozen=True)
class WreathElement:
    lamps: Lamps = field(default=())
    shift: int = 0

    @classmethod
    def from_map(cls, lamps: Mapping[int, int], shift: int = 0) -> WreathElement:
        return cls(_canonical(lamps), shift)

    def lamp_map(self) -> dict[int, int]:
        return dict(self.lamps)

    def is_identity(self) -> bool:
        return not self.lamps and self.shift == 0

    def to_bytes(self) -> bytes:
        body = ";".join(f"{pos}:{val}" for pos, val in self.lamps)
        return f"{body}|{self.shift}".encode()


WREATH_IDENTITY = WreathElement()
ALPHA_INF = WreathElement((), 1)
BETA_INF = WreathElement(((0, 1),), 0)


def w_mul(u: WreathElement, v: WreathElement) -> WreathElement:
    """
    (f, s)(g, t) = (f + g moved by s, s + t)
    """
    lamps = u.lamp_map()
    for pos, val in v.lamps:
        lamps[pos + u.shift] = lamps.get(pos + u.shift, 0) + val
    return WreathElement.from_map(lamps, u.shift + v.shift)


def w_inv(u: WreathElement) -> WreathElement:
    # (f, s)^-1 = (-f moved by -s, -s)
    return WreathElement.from_map(
        {pos - u.shift: -val for pos, val in u.lamps}, -u.shift
    )


def w_eval(word: str) -> WreathElement:
    """
    Evaluate a word at the two wreath generators in one pass
    """
    lamps: dict[int, int] = {}
    position = 0
    for letter in word:
        if letter == "a":
            position += 1
        elif letter == "A":
            position -= 1
        elif letter == "b":
            lamps[position] = lamps.get(position, 0) + 1
        elif letter == "B":
            lamps[position] = lamps.get(position, 0) - 1
        else:
            raise ValueError(f"Unknown letter {letter!r}")
    return WreathElement.from_map(lamps, position)


def lamp_data(u: WreathElement) -> tuple[dict[int, int], int]:
    """
    The exponents c_i mod 3 of the conjugated lamp generators, and the
    final shift l.
    """
    return u.lamp_map(), u.shift


def normal_form_word(u: WreathElement) -> str:
    """
    A word spelling prod_i (a^i b a^-i)^{c_i} a^l with positions ascending.

    Not reduced in general; it is evaluated letter by letter.
    """
    parts: list[str] = []
    position = 0
    for pos, val in u.lamps:
        step = pos - position
        parts.append("a" * step if step >= 0 else "A" * -step)
        parts.append("b" * val)
        position = pos
    step = u.shift - position
    parts.append("a" * step if step >= 0 else "A" * -step)
    return "".join(parts)

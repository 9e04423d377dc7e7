"""
Freely reduced words over a, A = a^-1, b, B = b^-1.
"""
from __future__ import annotations

import random
from collections import deque
from typing import Iterable, Iterator

from neumann_rfg.type_util import INVERSE_LETTER, LETTERS


class InvalidWordError(ValueError):
    """
    Raised for letters outside {a, A, b, B} or for an unreduced Word
    """

    def __init__(self, raw: str, reason: str) -> None:
        self.raw = raw
        self.reason = reason
        super().__init__(raw, reason)

    def __str__(self) -> str:
        return f"Invalid word {self.raw!r}: {self.reason}"


def _check_letters(raw: str) -> None:
    for ch in raw:
        if ch not in INVERSE_LETTER:
            raise InvalidWordError(raw, f"unknown letter {ch!r}")


class Word(str):
    """
    A freely reduced word, stored as its ASCII spelling.

    Constructing a Word from an unreduced string raises; use free_reduce
    for arbitrary input.
    """

    def __new__(cls, letters: str = "") -> Word:
        _check_letters(letters)
        for left, right in zip(letters, letters[1:]):
            if INVERSE_LETTER[left] == right:
                raise InvalidWordError(letters, "not freely reduced")
        return super().__new__(cls, letters)

    def __repr__(self) -> str:
        return f"Word({str.__repr__(self)})"

    @property
    def inverse(self) -> Word:
        return Word(self[::-1].swapcase())

    def then(self, other: str) -> Word:
        """
        Reduced product self * other
        """
        return free_reduce(str(self) + str(other))

    @property
    def exponent_sum_a(self) -> int:
        return self.count("a") - self.count("A")


def free_reduce(raw: Iterable[str] | str) -> Word:
    raw_str = "".join(raw)
    _check_letters(raw_str)
    stack: list[str] = []
    for ch in raw_str:
        if stack and stack[-1] == INVERSE_LETTER[ch]:
            stack.pop()
        else:
            stack.append(ch)
    return Word("".join(stack))


def power_word(letter: str, k: int) -> Word:
    """
    letter^k, negative k giving the inverse letter
    """
    if k < 0:
        return Word(INVERSE_LETTER[letter] * -k)
    return Word(letter * k)


def extensions(word: str) -> Iterator[str]:
    """
    Letters that can follow word without cancelling
    """
    last = word[-1] if word else None
    for letter in LETTERS:
        if last is None or INVERSE_LETTER[last] != letter:
            yield letter


def enumerate_reduced(n: int) -> Iterator[Word]:
    """
    All reduced words of length <= n, shortest first, each length in
    letter order a, A, b, B.
    """
    if n < 0:
        raise ValueError(f"Length must be nonnegative, got {n}")
    layer = [""]
    yield Word("")
    for _ in range(n):
        next_layer = []
        for word in layer:
            for letter in extensions(word):
                extended = word + letter
                next_layer.append(extended)
                yield Word(extended)
        layer = next_layer


def count_reduced(n: int) -> int:
    """
    Number of reduced words of length <= n
    """
    return 1 + sum(4 * 3 ** (k - 1) for k in range(1, n + 1))


def walk_reduced(n: int) -> Iterator[tuple[str, str]]:
    """
    Depth-first walk over reduced words of length 1..n, yielding
    (parent, child) pairs so callers can extend per-prefix state.
    """
    stack: deque[str] = deque([""])
    while stack:
        parent = stack.pop()
        if len(parent) == n:
            continue
        for letter in extensions(parent):
            child = parent + letter
            yield parent, child
            stack.append(child)


def random_reduced(n: int, seed: int | random.Random) -> Word:
    """
    A uniformly random reduced word of length exactly n.

    :param seed: an int seed or a Random to draw from
    """
    if n < 0:
        raise ValueError(f"Length must be nonnegative, got {n}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    letters: list[str] = []
    for _ in range(n):
        options = list(extensions(letters[-1] if letters else ""))
        letters.append(rng.choice(options))
    return Word("".join(letters))


def commutator(u: str, v: str) -> Word:
    """
    [u, v] = u^-1 v^-1 u v
    """
    u_w, v_w = free_reduce(u), free_reduce(v)
    return free_reduce(u_w.inverse + v_w.inverse + u_w + v_w)


def conjugate(u: str, v: str) -> Word:
    """
    v u v^-1
    """
    v_w = free_reduce(v)
    return free_reduce(v_w + str(u) + v_w.inverse)

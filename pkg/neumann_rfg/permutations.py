"""
Exact arithmetic on permutations of {0, ..., d-1}.

Points are 0-based. A permutation is stored as its image table, and
composition applies the right factor first: (p * q)(x) = p(q(x)).
"""
from __future__ import annotations

import math
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from neumann_rfg.primes import is_prime
from neumann_rfg.type_util import ImageArray


class InvalidPermutationError(ValueError):
    """
    Raised when an image table or cycle does not describe a bijection
    """


class DegreeMismatchError(ValueError):
    """
    Raised when two permutations of different degrees are combined
    """

    def __init__(self, left: int, right: int) -> None:
        self.left = left
        self.right = right
        super().__init__(left, right)

    def __str__(self) -> str:
        return f"Degree mismatch: {self.left} != {self.right}"


class GeneratorPreconditionError(ValueError):
    """
    Raised when (d, r1, r2) cannot produce the generator pair
    """


class Permutation:
    """
    Immutable permutation backed by a read-only numpy image table
    """

    __slots__ = ("_images", "_hash")

    def __init__(self, images: Iterable[int] | ImageArray, *, check: bool = True) -> None:
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidPermutationError("Image table must be a nonempty 1-d sequence")
        if check:
            seen = np.zeros(arr.size, dtype=bool)
            if arr.min() < 0 or arr.max() >= arr.size:
                raise InvalidPermutationError(f"Images out of range for degree {arr.size}")
            seen[arr] = True
            if not seen.all():
                raise InvalidPermutationError("Image table is not a bijection")
        arr.setflags(write=False)
        self._images = arr
        self._hash: int | None = None

    @property
    def images(self) -> ImageArray:
        return self._images

    @property
    def degree(self) -> int:
        return int(self._images.size)

    def __call__(self, point: int) -> int:
        return int(self._images[point])

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and bool(
            np.array_equal(self._images, other._images)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._images.tobytes())
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({self.cycles_str()}, degree={self.degree})"

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._images, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """
        Nontrivial cycles, each starting at its smallest point
        """
        seen = np.zeros(self.degree, dtype=bool)
        out: list[tuple[int, ...]] = []
        images = self._images.tolist()
        for start in range(self.degree):
            if seen[start] or images[start] == start:
                continue
            cycle = [start]
            seen[start] = True
            nxt = images[start]
            while nxt != start:
                seen[nxt] = True
                cycle.append(nxt)
                nxt = images[nxt]
            out.append(tuple(cycle))
        return out

    def cycles_str(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def to_bytes(self) -> bytes:
        return self._images.tobytes()


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise DegreeMismatchError(p.degree, q.degree)


def identity(d: int) -> Permutation:
    if d < 1:
        raise InvalidPermutationError(f"Degree must be at least 1, got {d}")
    return Permutation(np.arange(d, dtype=np.int32), check=False)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """
    Return x -> p(q(x)).

    :param p: applied second
    :param q: applied first
    """
    _check_degrees(p, q)
    return Permutation(p.images[q.images], check=False)


def inverse(p: Permutation) -> Permutation:
    inv = np.empty(p.degree, dtype=np.int32)
    inv[p.images] = np.arange(p.degree, dtype=np.int32)
    return Permutation(inv, check=False)


def power(p: Permutation, k: int) -> Permutation:
    """
    p composed with itself k times, negative k meaning the inverse
    """
    base = inverse(p) if k < 0 else p
    k = abs(k)
    result = identity(p.degree)
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def order(p: Permutation) -> int:
    lengths = [len(c) for c in p.cycles()]
    return reduce(math.lcm, lengths, 1)


def support(p: Permutation) -> frozenset[int]:
    return frozenset(int(x) for x in np.flatnonzero(p.images != np.arange(p.degree)))


def is_even(p: Permutation) -> bool:
    # d minus the number of cycles, fixed points included
    num_cycles = len(p.cycles()) + (p.degree - len(support(p)))
    return (p.degree - num_cycles) % 2 == 0


def cycle_from(points: Sequence[int], d: int) -> Permutation:
    """
    The cycle points[0] -> points[1] -> ... -> points[0] on d points
    """
    if len(set(points)) != len(points):
        raise InvalidPermutationError(f"Cycle has repeated points: {list(points)}")
    if any(x < 0 or x >= d for x in points):
        raise InvalidPermutationError(f"Cycle points must lie in [0, {d})")
    images = np.arange(d, dtype=np.int32)
    if points:
        images[list(points)] = np.roll(np.array(points, dtype=np.int32), -1)
    return Permutation(images, check=False)


def cyclic_shift(d: int, k: int = 1) -> Permutation:
    """
    x -> x + k mod d
    """
    return Permutation((np.arange(d, dtype=np.int64) + k) % d, check=False)


def make_generators(d: int, r1: int, r2: int) -> tuple[Permutation, Permutation]:
    """
    The generator pair at one coordinate: the full d-cycle and the
    3-cycle (0, r1, r1 + r2).

    :param d: odd prime degree, at least 5
    :param r1: first gap, positive
    :param r2: second gap, positive, with r1 + r2 <= d - 1
    """
    if d < 5 or not is_prime(d):
        raise GeneratorPreconditionError(f"d must be an odd prime >= 5, got {d}")
    if r1 < 1 or r2 < 1 or r1 + r2 > d - 1:
        raise GeneratorPreconditionError(
            f"Need r1, r2 >= 1 and r1 + r2 <= d - 1, got d={d}, r1={r1}, r2={r2}"
        )
    return cyclic_shift(d), cycle_from([0, r1, r1 + r2], d)


class ShiftedSparsePermutation:
    """
    A permutation held as sigma * alpha^shift, where alpha is x -> x + 1 mod d
    and sigma is stored sparsely (fixed points omitted).

    Right-multiplying by a generator of the pair from make_generators
    touches at most three entries of sigma.
    """

    __slots__ = ("d", "r1", "r2", "shift", "sigma")

    def __init__(self, d: int, r1: int, r2: int) -> None:
        self.d = d
        self.r1 = r1
        self.r2 = r2
        self.shift = 0
        self.sigma: dict[int, int] = {}

    def _rotate(self, x0: int, x1: int, x2: int) -> None:
        # sigma <- sigma * (x0 x1 x2)
        sigma = self.sigma
        v0 = sigma.get(x1, x1)
        v1 = sigma.get(x2, x2)
        v2 = sigma.get(x0, x0)
        for x, v in ((x0, v0), (x1, v1), (x2, v2)):
            if x == v:
                sigma.pop(x, None)
            else:
                sigma[x] = v

    def apply(self, letter: str) -> None:
        if letter == "a":
            self.shift += 1
        elif letter == "A":
            self.shift -= 1
        else:
            d = self.d
            x0 = self.shift % d
            x1 = (self.shift + self.r1) % d
            x2 = (self.shift + self.r1 + self.r2) % d
            if letter == "b":
                self._rotate(x0, x1, x2)
            elif letter == "B":
                self._rotate(x0, x2, x1)
            else:
                raise ValueError(f"Unknown letter {letter!r}")

    def apply_all(self, letters: Iterable[str]) -> ShiftedSparsePermutation:
        for letter in letters:
            self.apply(letter)
        return self

    def is_identity(self) -> bool:
        d = self.d
        s = self.shift % d
        if s == 0:
            return not self.sigma
        # sigma would have to be alpha^-s, which moves every point
        if len(self.sigma) != d:
            return False
        return all(v == (x - s) % d for x, v in self.sigma.items())

    def to_permutation(self) -> Permutation:
        d = self.d
        table = np.arange(d, dtype=np.int32)
        for x, v in self.sigma.items():
            table[x] = v
        shifted = (np.arange(d, dtype=np.int64) + self.shift) % d
        return Permutation(table[shifted], check=False)

    def same_as(self, other: ShiftedSparsePermutation) -> bool:
        """
        True if both hold the same permutation
        """
        if self.d != other.d:
            return False
        if (self.shift - other.shift) % self.d == 0:
            return self.sigma == other.sigma
        return self.to_permutation() == other.to_permutation()

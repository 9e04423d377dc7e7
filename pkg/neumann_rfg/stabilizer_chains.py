"""
Base and strong generating set construction (Schreier-Sims).

The algorithm is deterministic. A seeded product-replacement stream only
proposes strong generators, as a shortcut. Its result is accepted without
further work only when the transversal sizes already multiply to the
largest order the generators allow (d!/2 for even generators, d!
otherwise); partial orbits never exceed the true orbits, so that product
is then the exact order. Otherwise StabilizerChain.complete() checks every
Schreier generator, and that pass alone decides the chain. The order
returned is always exact.
"""
from __future__ import annotations

import logging
import math
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from neumann_rfg.permutations import (
    DegreeMismatchError,
    Permutation,
    compose,
    identity,
    inverse,
    is_even,
    make_generators,
)

logger = logging.getLogger(__name__)

# fixed so that chains, and therefore logs, are reproducible
PRODUCT_REPLACEMENT_SEED = 0x5EED
# consecutive stream elements that sift to the identity before giving up
STALL_LIMIT = 40


@dataclass
class _Level:
    base_point: int
    generators: list[Permutation] = field(default_factory=list)
    # point x -> u with u(base_point) = x, and its inverse
    transversal: dict[int, Permutation] = field(default_factory=dict)
    inverses: dict[int, Permutation] = field(default_factory=dict)


class StabilizerChain:
    """
    Stabilizer chain for the group generated by some permutations of one
    degree. Level k holds generators fixing the first k base points and the
    orbit of the k-th base point under them.
    """

    def __init__(self, degree: int) -> None:
        self.degree = degree
        self._levels: list[_Level] = []

    @property
    def base(self) -> list[int]:
        return [lvl.base_point for lvl in self._levels]

    @property
    def transversal_sizes(self) -> list[int]:
        return [len(lvl.transversal) for lvl in self._levels]

    def strong_generators(self, level: int) -> list[Permutation]:
        return list(self._levels[level].generators)

    def orbit(self, level: int) -> frozenset[int]:
        return frozenset(self._levels[level].transversal)

    def representative(self, level: int, point: int) -> Permutation:
        return self._levels[level].transversal[point]

    def order(self) -> int:
        return math.prod(self.transversal_sizes)

    def sift(self, p: Permutation, start: int = 0) -> tuple[Permutation, int]:
        """
        Strip p through the levels from start on.

        :return: the residue and the level where sifting stopped,
            len(base) if every level was passed
        """
        if p.degree != self.degree:
            raise DegreeMismatchError(self.degree, p.degree)
        h = p
        for k in range(start, len(self._levels)):
            lvl = self._levels[k]
            x = h(lvl.base_point)
            if x not in lvl.inverses:
                return h, k
            h = compose(lvl.inverses[x], h)
        return h, len(self._levels)

    def _new_level(self, moved_by: Permutation) -> None:
        base = set(self.base)
        point = next(
            x for x in range(self.degree) if moved_by(x) != x and x not in base
        )
        ident = identity(self.degree)
        self._levels.append(
            _Level(point, [], {point: ident}, {point: ident})
        )

    def _extend_orbit(self, k: int, new_gens: Sequence[Permutation]) -> None:
        lvl = self._levels[k]
        lvl.generators.extend(new_gens)
        # orbit already covers every point not fixed by the base prefix
        if len(lvl.transversal) == self.degree - k:
            return
        queue: deque[int] = deque()
        for g in new_gens:
            for y in list(lvl.transversal):
                self._visit(lvl, g, y, queue)
        while queue:
            y = queue.popleft()
            for g in lvl.generators:
                self._visit(lvl, g, y, queue)

    @staticmethod
    def _visit(lvl: _Level, g: Permutation, y: int, queue: deque[int]) -> None:
        z = g(y)
        if z in lvl.transversal:
            return
        u = compose(g, lvl.transversal[y])
        lvl.transversal[z] = u
        lvl.inverses[z] = inverse(u)
        queue.append(z)

    def add_residue(self, h: Permutation, level: int) -> None:
        """
        Add a nontrivial residue fixing the first `level` base points
        """
        if level == len(self._levels):
            self._new_level(h)
        for k in range(level + 1):
            self._extend_orbit(k, [h])
        logger.debug(
            "Strong generator added at level %d, sizes now %s",
            level,
            self.transversal_sizes,
        )

    def is_complete(self) -> bool:
        """
        True if every Schreier generator sifts to the identity
        """
        return self._find_failing_schreier_generator() is None

    def _find_failing_schreier_generator(
        self,
    ) -> tuple[Permutation, int] | None:
        for k, lvl in enumerate(self._levels):
            for y, u_y in lvl.transversal.items():
                for g in lvl.generators:
                    z = g(y)
                    s = compose(lvl.inverses[z], compose(g, u_y))
                    residue, stop = self.sift(s, k + 1)
                    if not residue.is_identity():
                        return residue, stop
        return None

    def complete(self) -> None:
        while (failing := self._find_failing_schreier_generator()) is not None:
            residue, stop = failing
            self.add_residue(residue, stop)


class _ProductReplacement:
    def __init__(self, generators: Sequence[Permutation], seed: int) -> None:
        self._rng = random.Random(seed)
        state = list(generators)
        while len(state) < 10:
            state.extend(generators)
        self._state = state
        self._acc = identity(generators[0].degree)
        for _ in range(50):
            self.next()

    def next(self) -> Permutation:
        i, j = self._rng.sample(range(len(self._state)), 2)
        other = self._state[j]
        if self._rng.random() < 0.5:
            other = inverse(other)
        if self._rng.random() < 0.5:
            self._state[i] = compose(self._state[i], other)
        else:
            self._state[i] = compose(other, self._state[i])
        self._acc = compose(self._acc, self._state[i])
        return self._acc


def _parity_bound(degree: int, generators: Sequence[Permutation]) -> int:
    full = math.factorial(degree)
    return full // 2 if all(is_even(g) for g in generators) else full


def build_chain(generators: Sequence[Permutation]) -> StabilizerChain:
    """
    Build a complete stabilizer chain for the group generated by generators.

    :param generators: nonempty, all of the same degree
    """
    if not generators:
        raise ValueError("At least one generator is required")
    degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise DegreeMismatchError(degree, g.degree)

    chain = StabilizerChain(degree)
    nontrivial = [g for g in generators if not g.is_identity()]
    if not nontrivial:
        return chain

    for g in nontrivial:
        residue, stop = chain.sift(g)
        if not residue.is_identity():
            chain.add_residue(residue, stop)

    bound = _parity_bound(degree, nontrivial)
    stream = _ProductReplacement(nontrivial, PRODUCT_REPLACEMENT_SEED)
    stalled = 0
    while chain.order() < bound and stalled < STALL_LIMIT:
        residue, stop = chain.sift(stream.next())
        if residue.is_identity():
            stalled += 1
            continue
        stalled = 0
        chain.add_residue(residue, stop)

    if chain.order() == bound:
        logger.debug("Degree %d chain reached the parity bound %d", degree, bound)
        return chain

    logger.debug("Degree %d chain stalled at order %d, verifying", degree, chain.order())
    chain.complete()
    return chain


def group_order(chain: StabilizerChain) -> int:
    return chain.order()


def contains(chain: StabilizerChain, p: Permutation) -> bool:
    residue, stop = chain.sift(p)
    return stop == len(chain.base) and residue.is_identity()


def verify_alt_generation(d: int, r1: int, r2: int) -> bool:
    """
    True iff the coordinate generators for (d, r1, r2) generate Alt(d)
    """
    alpha, beta = make_generators(d, r1, r2)
    order = group_order(build_chain([alpha, beta]))
    logger.info("Order of <alpha, beta> for d=%d, r=(%d, %d): %d", d, r1, r2, order)
    return order == math.factorial(d) // 2


def closure_order(generators: Sequence[Permutation], limit: int = 10_000) -> int:
    """
    Size of the generated group by breadth-first closure.

    :param limit: raise ValueError once more elements than this are found
    """
    if not generators:
        raise ValueError("At least one generator is required")
    start = identity(generators[0].degree)
    seen = {start}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        for g in generators:
            q = compose(g, p)
            if q not in seen:
                seen.add(q)
                if len(seen) > limit:
                    raise ValueError(f"Closure exceeds {limit} elements")
                queue.append(q)
    return len(seen)

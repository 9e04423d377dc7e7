"""
The group generated by the diagonal sequences alpha = (alpha_m) and
beta = (beta_m) inside the product of the Alt(d(m)).

Elements are handled as words. Coordinates m whose 3-cycles are spread
apart for the word length behave like the lamplighter group, so a word is
decided by its wreath image plus the finitely many coordinates below
cutoff(n).
"""
from __future__ import annotations

import hashlib
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from neumann_rfg.permutations import (
    Permutation,
    ShiftedSparsePermutation,
    cycle_from,
    identity,
    inverse,
    make_generators,
    power,
)
from neumann_rfg.sequences import SequenceSet
from neumann_rfg.stabilizer_chains import verify_alt_generation
from neumann_rfg.words import (
    Word,
    commutator,
    conjugate,
    enumerate_reduced,
    extensions,
    free_reduce,
    power_word,
)
from neumann_rfg.wreaths import WreathElement, lamp_data, normal_form_word, w_eval

logger = logging.getLogger(__name__)

# coordinates checked by the scan oracle and by witness verification
DEFAULT_SCAN = 100


class SpreadAssertionFailed(Exception):
    """
    Raised when coordinates above the scanned range are not spread out
    for the requested word length
    """

    def __init__(self, n: int, m: int, d: int, r: int) -> None:
        self.n = n
        self.m = m
        self.d = d
        self.r = r
        super().__init__(n, m, d, r)

    def __str__(self) -> str:
        return (
            f"Spread fails beyond the scan bound for length {self.n}:"
            f" m={self.m}, d={self.d}, r={self.r}"
        )


class WitnessCheckFailed(Exception):
    """
    Raised when a witness word does not behave as an element supported at
    exactly one coordinate
    """


class BallBudgetExceeded(Exception):
    """
    Raised when ball enumeration passes its element budget
    """

    def __init__(self, n: int, budget: int) -> None:
        self.n = n
        self.budget = budget
        super().__init__(n, budget)

    def __str__(self) -> str:
        return f"Ball of radius {self.n} has more than {self.budget} elements"


def tripod_spread_ok(d: int, r1: int, r2: int, n: int) -> bool:
    """
    r1, r2 and d - r1 - r2 all at least 2n + 1
    """
    bound = 2 * n + 1
    return r1 >= bound and r2 >= bound and d - r1 - r2 >= bound


@dataclass(frozen=True)
class ElementSignature:
    low_coords: tuple[Permutation, ...]
    wreath: WreathElement

    def to_bytes(self) -> bytes:
        parts = [p.to_bytes() for p in self.low_coords]
        parts.append(self.wreath.to_bytes())
        return b"#".join(parts)

    def digest(self) -> str:
        return hashlib.sha256(self.to_bytes()).hexdigest()


class GroupContext:
    """
    Sequences plus a cache of coordinate generators. The cache only grows,
    so a context can be shared across threads.
    """

    def __init__(self, seqs: SequenceSet) -> None:
        self.seqs = seqs
        self._lock = threading.Lock()
        self._generators: dict[int, tuple[Permutation, Permutation]] = {}
        self._letter_images: dict[int, dict[str, np.ndarray]] = {}
        self._cutoffs: dict[int, int] = {}

    def d(self, m: int) -> int:
        return self.seqs.d_of(m)

    def r(self, m: int) -> int:
        return self.seqs.r_of(m)

    def generators(self, m: int) -> tuple[Permutation, Permutation]:
        if m not in self._generators:
            d, r = self.d(m), self.r(m)
            gens = make_generators(d, r, r)
            alpha, beta = gens
            with self._lock:
                self._generators[m] = gens
                self._letter_images[m] = {
                    "a": alpha.images,
                    "A": inverse(alpha).images,
                    "b": beta.images,
                    "B": inverse(beta).images,
                }
        return self._generators[m]

    def letter_images(self, m: int) -> dict[str, np.ndarray]:
        self.generators(m)
        return self._letter_images[m]

    def cached_cutoff(self, n: int, compute: Callable[[int], int]) -> int:
        """
        compute(n) runs outside the lock, since it reads generators. The
        first stored value wins.
        """
        with self._lock:
            if n in self._cutoffs:
                return self._cutoffs[n]
        m0 = compute(n)
        with self._lock:
            return self._cutoffs.setdefault(n, m0)


def coordinate_eval(ctx: GroupContext, w: str, m: int) -> Permutation:
    """
    w(alpha_m, beta_m) by direct composition
    """
    images = ctx.letter_images(m)
    current = np.arange(ctx.d(m), dtype=np.int32)
    for letter in w:
        current = current[images[letter]]
    return Permutation(current, check=False)


def coordinate_eval_sparse(ctx: GroupContext, w: str, m: int) -> ShiftedSparsePermutation:
    r = ctx.r(m)
    return ShiftedSparsePermutation(ctx.d(m), r, r).apply_all(w)


def spread_ok(ctx: GroupContext, m: int, n: int) -> bool:
    r = ctx.r(m)
    return tripod_spread_ok(ctx.d(m), r, r, n)


def cutoff(ctx: GroupContext, n: int) -> int:
    """
    Largest m <= 2n + 1 where the spread condition for length n fails,
    0 if none. Every coordinate above it is spread out.
    """
    return ctx.cached_cutoff(n, lambda k: _find_cutoff(ctx, k))


def _find_cutoff(ctx: GroupContext, n: int) -> int:
    bound = 2 * n + 1
    m0 = 0
    for m in range(bound, 0, -1):
        if not spread_ok(ctx, m, n):
            m0 = m
            break
    # r(m) > m takes care of r >= 2n + 1 past the bound; d - 2r must follow
    for m in range(m0 + 1, bound + 2):
        d, r = ctx.d(m), ctx.r(m)
        if d - 2 * r < bound:
            raise SpreadAssertionFailed(n, m, d, r)
    d_next = ctx.d(bound + 1)
    if d_next < 3 * bound:
        raise SpreadAssertionFailed(n, bound + 1, d_next, ctx.r(bound + 1))
    return m0


def is_trivial(ctx: GroupContext, w: str) -> bool:
    """
    Word problem: the wreath image and every coordinate up to the cutoff
    must be trivial
    """
    if not w_eval(w).is_identity():
        return False
    return all(
        coordinate_eval(ctx, w, m).is_identity() for m in range(1, cutoff(ctx, len(w)) + 1)
    )


def is_trivial_by_scan(ctx: GroupContext, w: str, scan: int = DEFAULT_SCAN) -> bool:
    """
    Oracle: wreath image and coordinates 1..scan all trivial
    """
    if not w_eval(w).is_identity():
        return False
    return all(coordinate_eval(ctx, w, m).is_identity() for m in range(1, scan + 1))


def equal(ctx: GroupContext, u: str, v: str) -> bool:
    return is_trivial(ctx, free_reduce(str(u) + free_reduce(v).inverse))


def signature(ctx: GroupContext, w: str, n_class: int) -> ElementSignature:
    """
    Data deciding equality among words of length <= n_class.

    :param n_class: length class; len(w) must not exceed it
    """
    if len(w) > n_class:
        raise ValueError(f"Word of length {len(w)} exceeds its class {n_class}")
    m0 = cutoff(ctx, 2 * n_class)
    low = tuple(coordinate_eval(ctx, w, m) for m in range(1, m0 + 1))
    return ElementSignature(low, w_eval(w))


def projection_key(ctx: GroupContext, w: str, m_max: int) -> bytes:
    """
    The images of w at coordinates 1..m_max, as bytes
    """
    return b"#".join(coordinate_eval(ctx, w, m).to_bytes() for m in range(1, m_max + 1))


def witness_word(ctx: GroupContext, m: int) -> Word:
    r = ctx.r(m)
    return commutator("b", conjugate("b", power_word("a", r)))


def witness(ctx: GroupContext, m: int, scan: int = DEFAULT_SCAN) -> Word:
    """
    [b, a^r(m) b a^-r(m)], checked to be nontrivial at coordinate m only
    """
    w = witness_word(ctx, m)
    if not w_eval(w).is_identity():
        raise WitnessCheckFailed(f"Witness for m={m} has a nontrivial wreath image")
    if coordinate_eval(ctx, w, m).is_identity():
        raise WitnessCheckFailed(f"Witness for m={m} is trivial at its own coordinate")
    top = max(scan, cutoff(ctx, len(w)))
    for k in range(1, top + 1):
        if k != m and not coordinate_eval(ctx, w, k).is_identity():
            raise WitnessCheckFailed(f"Witness for m={m} is nontrivial at coordinate {k}")
    return w


def reconstruct_from_lamps(ctx: GroupContext, w: str, m: int) -> Permutation:
    """
    prod_i (alpha^i beta alpha^-i)^c_i * alpha^l from the wreath data of w,
    composed densely
    """
    d, r = ctx.d(m), ctx.r(m)
    lamps, shift = lamp_data(w_eval(w))
    current = (np.arange(d, dtype=np.int64) + shift) % d
    for pos in sorted(lamps, reverse=True):
        conj = cycle_from([pos % d, (pos + r) % d, (pos + 2 * r) % d], d).images
        for _ in range(lamps[pos]):
            current = conj[current]
    return Permutation(current, check=False)


def reconstruct_sparse(ctx: GroupContext, w: str, m: int) -> ShiftedSparsePermutation:
    return coordinate_eval_sparse(ctx, normal_form_word(w_eval(w)), m)


def prefix_images(
    ctx: GroupContext, m: int, max_len: int
) -> Iterator[tuple[str, np.ndarray]]:
    """
    Depth-first over reduced words of length 1..max_len with their images
    at coordinate m, extending each prefix by one composition
    """
    images = ctx.letter_images(m)
    stack: list[tuple[str, np.ndarray]] = [("", np.arange(ctx.d(m), dtype=np.int32))]
    while stack:
        word, current = stack.pop()
        if len(word) == max_len:
            continue
        for letter in extensions(word):
            child = current[images[letter]]
            yield word + letter, child
            stack.append((word + letter, child))


def ball(
    ctx: GroupContext, n: int, max_elements: int = 200_000
) -> list[tuple[Word, ElementSignature]]:
    """
    One representative per element of the radius-n ball, shortest first.

    Extends only the new representatives of each layer and deduplicates by
    signature digest, confirming a digest hit with full equality.
    """
    seen: dict[str, list[ElementSignature]] = {}
    out: list[tuple[Word, ElementSignature]] = []

    def admit(word: Word) -> bool:
        sig = signature(ctx, word, n)
        bucket = seen.setdefault(sig.digest(), [])
        if any(sig == other for other in bucket):
            return False
        bucket.append(sig)
        out.append((word, sig))
        if len(out) > max_elements:
            raise BallBudgetExceeded(n, max_elements)
        return True

    admit(Word(""))
    layer = [Word("")]
    for k in range(1, n + 1):
        next_layer = []
        for rep in layer:
            for letter in extensions(rep):
                word = Word(rep + letter)
                if admit(word):
                    next_layer.append(word)
        logger.debug("Ball layer %d has %d new elements", k, len(next_layer))
        layer = next_layer
    return out


def pairwise_ball_size(ctx: GroupContext, n: int) -> int:
    """
    Oracle: classes of reduced words of length <= n under equal()
    """
    reps: list[Word] = []
    for word in enumerate_reduced(n):
        if not any(equal(ctx, word, rep) for rep in reps):
            reps.append(word)
    return len(reps)


def rho_injective(ctx: GroupContext, n: int, m_max: int | None = None) -> bool:
    """
    True if projecting to coordinates 1..m_max (default 2n) separates the
    elements of the radius-n ball
    """
    top = 2 * n if m_max is None else m_max
    elements = ball(ctx, n)
    keys = {projection_key(ctx, word, top) for word, _ in elements}
    return len(keys) == len(elements)


def injectivity_radius(ctx: GroupContext, m_max: int, n_max: int) -> int:
    """
    Largest n <= n_max such that coordinates 1..m_max separate the
    radius-n ball; -1 if even the trivial ball is not separated
    """
    radius = -1
    for n in range(0, n_max + 1):
        elements = ball(ctx, n)
        keys = {projection_key(ctx, word, m_max) for word, _ in elements}
        if len(keys) != len(elements):
            break
        radius = n
    return radius


def commuting_trivial(ctx: GroupContext, m: int, n: int) -> bool:
    """
    True if beta_m commutes with alpha_m^r(n) beta_m alpha_m^-r(n)
    """
    alpha, beta = ctx.generators(m)
    shift = ctx.r(n)
    conj = power(alpha, shift) * beta * power(alpha, -shift)
    comm = inverse(beta) * inverse(conj) * beta * conj
    return comm == identity(ctx.d(m))


def simple_subgroup_premises(ctx: GroupContext, M: int, scan: int = DEFAULT_SCAN) -> int:
    """
    For m <= M: the coordinate generators give Alt(d(m)), and the witness
    lies in the copy of Alt(d(m)) at coordinate m. Returns cases checked.
    """
    for m in range(1, M + 1):
        r = ctx.r(m)
        assert verify_alt_generation(ctx.d(m), r, r), f"<alpha_{m}, beta_{m}> is not Alt"
        witness(ctx, m, scan)
    return M

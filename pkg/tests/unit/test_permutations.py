from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

from neumann_rfg.permutations import (
    DegreeMismatchError,
    GeneratorPreconditionError,
    InvalidPermutationError,
    Permutation,
    ShiftedSparsePermutation,
    compose,
    cycle_from,
    cyclic_shift,
    identity,
    inverse,
    is_even,
    make_generators,
    order,
    power,
    support,
)


def dense_word(d: int, r: int, word: str) -> Permutation:
    alpha, beta = make_generators(d, r, r)
    letters = {"a": alpha, "A": inverse(alpha), "b": beta, "B": inverse(beta)}
    return reduce(compose, (letters[ch] for ch in word), identity(d))


class TestPermutation:
    class TestConstruction:
        def test_rejects_repeated_images(self) -> None:
            with pytest.raises(InvalidPermutationError):
                Permutation([0, 0, 1])

        def test_rejects_out_of_range(self) -> None:
            with pytest.raises(InvalidPermutationError):
                Permutation([0, 3, 1])

        def test_images_are_read_only(self) -> None:
            p = Permutation([1, 0, 2])

            with pytest.raises(ValueError):
                p.images[0] = 2

    class TestCompose:
        def test_right_factor_applies_first(self) -> None:
            p = cycle_from([0, 1], 3)
            q = cycle_from([1, 2], 3)

            pq = p * q

            assert pq(1) == 2
            assert pq(2) == 0
            assert pq == compose(p, q)

        def test_degree_mismatch(self) -> None:
            with pytest.raises(DegreeMismatchError) as exc:
                compose(identity(3), identity(4))

            assert str(exc.value) == "Degree mismatch: 3 != 4"

    class TestInverseAndPower:
        def test_inverse(self) -> None:
            p = cycle_from([0, 2, 4, 1], 6)

            assert compose(p, inverse(p)).is_identity()

        def test_power_of_shift_wraps(self) -> None:
            assert power(cyclic_shift(7), 7).is_identity()
            assert power(cyclic_shift(7), 3) == cyclic_shift(7, 3)

        def test_negative_power(self) -> None:
            p = cycle_from([0, 1, 2], 5)

            assert power(p, -1) == inverse(p)
            assert power(p, -4) == inverse(power(p, 4))

    class TestStructure:
        def test_order_is_lcm_of_cycle_lengths(self) -> None:
            p = cycle_from([0, 1, 2], 5) * cycle_from([3, 4], 5)

            assert order(p) == 6

        def test_parity(self) -> None:
            assert is_even(cycle_from([0, 1, 2], 5))
            assert not is_even(cycle_from([0, 1], 5))
            assert is_even(cyclic_shift(7))

        def test_support_and_cycles(self) -> None:
            p = cycle_from([3, 5, 7], 17)

            assert support(p) == frozenset({3, 5, 7})
            assert p.cycles() == [(3, 5, 7)]
            assert p.cycles_str() == "(3 5 7)"
            assert identity(4).cycles_str() == "()"

        def test_equal_permutations_hash_together(self) -> None:
            assert len({cycle_from([0, 1], 3), Permutation([1, 0, 2])}) == 1


class TestMakeGenerators:
    def test_generator_pair(self) -> None:
        alpha, beta = make_generators(11, 3, 3)

        assert alpha(10) == 0
        assert beta.cycles() == [(0, 3, 6)]

    def test_unequal_gaps(self) -> None:
        _, beta = make_generators(7, 2, 3)

        assert beta.cycles() == [(0, 2, 5)]

    def test_degree_must_be_odd_prime(self) -> None:
        with pytest.raises(GeneratorPreconditionError):
            make_generators(9, 2, 2)

    def test_gaps_must_fit(self) -> None:
        with pytest.raises(GeneratorPreconditionError):
            make_generators(5, 2, 3)


class TestShiftedSparsePermutation:
    @pytest.mark.parametrize("word", ["", "a", "b", "abAB", "bbaBAAbab", "BaaBAAbaabAA"])
    def test_matches_dense_composition(self, word: str) -> None:
        sparse = ShiftedSparsePermutation(11, 2, 2).apply_all(word)

        assert sparse.to_permutation() == dense_word(11, 2, word)

    def test_full_turn_is_identity(self) -> None:
        assert ShiftedSparsePermutation(11, 3, 3).apply_all("a" * 11).is_identity()

    def test_three_cycle_cubes_to_identity(self) -> None:
        sparse = ShiftedSparsePermutation(11, 3, 3).apply_all("abbbA")

        assert sparse.is_identity()
        assert not sparse.sigma

    def test_same_as_across_shift_offsets(self) -> None:
        left = ShiftedSparsePermutation(11, 3, 3).apply_all("a" * 11 + "b")
        right = ShiftedSparsePermutation(11, 3, 3).apply_all("b")

        assert left.same_as(right)
        assert not right.same_as(ShiftedSparsePermutation(11, 3, 3).apply_all("B"))

    def test_unknown_letter(self) -> None:
        with pytest.raises(ValueError):
            ShiftedSparsePermutation(11, 3, 3).apply("c")

    @given(word=st.text(alphabet="aAbB", max_size=40))
    def test_random_words_match_dense_composition(self, word: str) -> None:
        sparse = ShiftedSparsePermutation(13, 3, 4).apply_all(word)

        assert sparse.to_permutation() == dense_word(13, 3, word)


def permutation_triples() -> st.SearchStrategy[tuple[Permutation, ...]]:
    return st.integers(2, 12).flatmap(
        lambda d: st.tuples(*(st.permutations(range(d)).map(Permutation) for _ in range(3)))
    )


class TestGroupLaws:
    @given(triple=permutation_triples())
    def test_associative(self, triple: tuple[Permutation, ...]) -> None:
        p, q, s = triple

        assert compose(compose(p, q), s) == compose(p, compose(q, s))

    @given(triple=permutation_triples())
    def test_identity_and_inverse(self, triple: tuple[Permutation, ...]) -> None:
        p = triple[0]
        e = identity(p.degree)

        assert compose(p, e) == p == compose(e, p)
        assert compose(p, inverse(p)) == e == compose(inverse(p), p)

    @given(triple=permutation_triples())
    def test_inverse_reverses_products(self, triple: tuple[Permutation, ...]) -> None:
        p, q, _ = triple

        assert inverse(compose(p, q)) == compose(inverse(q), inverse(p))


class TestConjugation:
    @given(
        dr=st.sampled_from([(17, 2), (37, 3), (53, 5), (101, 7), (1009, 11)]),
        n=st.integers(1, 20),
        data=st.data(),
    )
    def test_shifted_three_cycle(self, dr: tuple[int, int], n: int, data: st.DataObject) -> None:
        d, r = dr
        i = data.draw(st.integers(-2 * n, 2 * n))
        alpha, beta = make_generators(d, r, r)

        conjugated = compose(compose(power(alpha, i), beta), power(alpha, -i))

        assert conjugated == cycle_from([i % d, (i + r) % d, (i + 2 * r) % d], d)

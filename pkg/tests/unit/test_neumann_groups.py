from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from neumann_rfg.neumann_groups import (
    BallBudgetExceeded,
    GroupContext,
    ball,
    commuting_trivial,
    coordinate_eval,
    coordinate_eval_sparse,
    cutoff,
    equal,
    injectivity_radius,
    is_trivial,
    is_trivial_by_scan,
    pairwise_ball_size,
    prefix_images,
    projection_key,
    reconstruct_from_lamps,
    reconstruct_sparse,
    rho_injective,
    signature,
    simple_subgroup_premises,
    spread_ok,
    tripod_spread_ok,
    witness,
    witness_word,
)
from neumann_rfg.permutations import compose, cycle_from, cyclic_shift
from neumann_rfg.sequences import SequenceSet
from neumann_rfg.words import count_reduced, enumerate_reduced


class TestSpread:
    def test_tripod(self) -> None:
        assert tripod_spread_ok(100, 21, 21, 10)
        assert not tripod_spread_ok(100, 20, 21, 10)
        assert not tripod_spread_ok(60, 21, 21, 10)

    def test_cutoff_for_single_letters(self, toy_context: GroupContext) -> None:
        assert not spread_ok(toy_context, 1, 1)
        assert cutoff(toy_context, 1) == 1

    def test_coordinates_past_cutoff_are_spread(self, toy_context: GroupContext) -> None:
        m0 = cutoff(toy_context, 6)

        assert all(spread_ok(toy_context, m, 6) for m in range(m0 + 1, 14))

    def test_cutoff_is_computed_once(self, toy_sequences: SequenceSet) -> None:
        ctx = GroupContext(toy_sequences)
        calls: list[int] = []

        def compute(n: int) -> int:
            calls.append(n)
            return 7

        assert ctx.cached_cutoff(3, compute) == 7
        assert ctx.cached_cutoff(3, compute) == 7
        assert calls == [3]

    def test_first_stored_cutoff_wins(self, toy_sequences: SequenceSet) -> None:
        ctx = GroupContext(toy_sequences)
        ctx.cached_cutoff(2, lambda n: 5)

        assert ctx.cached_cutoff(2, lambda n: 9) == 5

    def test_concurrent_cutoffs_agree(self, toy_sequences: SequenceSet) -> None:
        ctx = GroupContext(toy_sequences)
        expected = cutoff(GroupContext(toy_sequences), 4)

        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda _: cutoff(ctx, 4), range(32)))

        assert results == [expected] * 32


class TestCoordinateEval:
    def test_generators(self, toy_context: GroupContext) -> None:
        assert coordinate_eval(toy_context, "a", 1) == cyclic_shift(17)
        assert coordinate_eval(toy_context, "b", 1) == cycle_from([0, 2, 4], 17)

    def test_conjugate_is_shifted_three_cycle(self, toy_context: GroupContext) -> None:
        assert coordinate_eval(toy_context, "aaabAAA", 1) == cycle_from([3, 5, 7], 17)

    @pytest.mark.parametrize("word", ["abAB", "bbaBaab", "BaaBAAbaabAA"])
    def test_sparse_matches_dense(self, toy_context: GroupContext, word: str) -> None:
        for m in (1, 2, 5):
            sparse = coordinate_eval_sparse(toy_context, word, m)

            assert sparse.to_permutation() == coordinate_eval(toy_context, word, m)

    @settings(max_examples=50)
    @given(u=st.text(alphabet="aAbB", max_size=20), v=st.text(alphabet="aAbB", max_size=20))
    def test_eval_is_a_homomorphism(self, toy_context: GroupContext, u: str, v: str) -> None:
        for m in (1, 3):
            product = compose(coordinate_eval(toy_context, u, m), coordinate_eval(toy_context, v, m))

            assert coordinate_eval(toy_context, u + v, m) == product

    def test_prefix_images(self, toy_context: GroupContext) -> None:
        pairs = list(prefix_images(toy_context, 2, 3))

        assert len(pairs) == count_reduced(3) - 1
        for word, images in pairs:
            assert (images == coordinate_eval(toy_context, word, 2).images).all()


class TestWordProblem:
    def test_cube_of_b(self, toy_context: GroupContext) -> None:
        assert is_trivial(toy_context, "bbb")
        assert not is_trivial(toy_context, "ab")

    def test_equal(self, toy_context: GroupContext) -> None:
        assert equal(toy_context, "bb", "B")
        assert not equal(toy_context, "ab", "ba")

    def test_wreath_trivial_but_not_trivial(self, toy_context: GroupContext) -> None:
        # [b, a^5 b a^-5] survives where r(m) = 5
        assert not is_trivial(toy_context, "BaaaaaBAAAAAbaaaaabAAAAA")

    def test_agrees_with_scan_oracle(self, toy_context: GroupContext) -> None:
        for word in enumerate_reduced(4):
            assert is_trivial(toy_context, word) == is_trivial_by_scan(toy_context, word, 30)

    def test_signature_length_class(self, toy_context: GroupContext) -> None:
        with pytest.raises(ValueError):
            signature(toy_context, "abab", 3)

    def test_signature_digest(self, toy_context: GroupContext) -> None:
        digest = signature(toy_context, "ab", 2).digest()

        assert len(digest) == 64
        assert digest == signature(toy_context, "ab", 2).digest()


class TestWitness:
    def test_first_witness(self, toy_context: GroupContext) -> None:
        word = witness(toy_context, 1, scan=30)

        assert word == "BaaBAAbaabAA"

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_length_and_support(self, toy_context: GroupContext, m: int) -> None:
        word = witness(toy_context, m, scan=30)

        assert len(word) == 4 + 4 * toy_context.r(m)
        assert not coordinate_eval(toy_context, word, m).is_identity()
        assert coordinate_eval(toy_context, word, m + 1).is_identity()

    def test_witness_word_is_not_trivial(self, toy_context: GroupContext) -> None:
        assert not is_trivial(toy_context, witness_word(toy_context, 4))


class TestReconstruction:
    @pytest.mark.parametrize("word", ["abAB", "aabAAB", "bAbAba", "BBaab"])
    def test_dense(self, toy_context: GroupContext, word: str) -> None:
        assert reconstruct_from_lamps(toy_context, word, 20) == coordinate_eval(
            toy_context, word, 20
        )

    @pytest.mark.parametrize("word", ["abAB", "aabAAB", "bAbAba", "BBaab"])
    def test_sparse(self, toy_context: GroupContext, word: str) -> None:
        direct = coordinate_eval_sparse(toy_context, word, 20)

        assert reconstruct_sparse(toy_context, word, 20).same_as(direct)


class TestBall:
    def test_small_radii(self, toy_context: GroupContext) -> None:
        assert len(ball(toy_context, 0)) == 1
        assert len(ball(toy_context, 1)) == 5
        assert len(ball(toy_context, 2)) == 15

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_pairwise_oracle(self, toy_context: GroupContext, n: int) -> None:
        assert len(ball(toy_context, n)) == pairwise_ball_size(toy_context, n)

    def test_shortest_first(self, toy_context: GroupContext) -> None:
        lengths = [len(word) for word, _ in ball(toy_context, 3)]

        assert lengths == sorted(lengths)

    def test_budget(self, toy_context: GroupContext) -> None:
        with pytest.raises(BallBudgetExceeded):
            ball(toy_context, 3, max_elements=10)


class TestInjectivity:
    @pytest.mark.parametrize("n", [1, 2])
    def test_rho_injective(self, toy_context: GroupContext, n: int) -> None:
        assert rho_injective(toy_context, n)

    def test_radius(self, toy_context: GroupContext) -> None:
        assert injectivity_radius(toy_context, 2, 1) == 1

    def test_projection_key_separates(self, toy_context: GroupContext) -> None:
        assert projection_key(toy_context, "ab", 2) != projection_key(toy_context, "ba", 2)


class TestCommuting:
    def test_distinct_indices_commute(self, toy_context: GroupContext) -> None:
        assert commuting_trivial(toy_context, 1, 2)
        assert commuting_trivial(toy_context, 3, 1)

    def test_same_index_does_not(self, toy_context: GroupContext) -> None:
        assert not commuting_trivial(toy_context, 2, 2)


class TestSimpleSubgroupPremises:
    def test_first_coordinates(self, toy_context: GroupContext) -> None:
        assert simple_subgroup_premises(toy_context, 3, scan=20) == 3

import math

import pytest

from neumann_rfg.permutations import (
    DegreeMismatchError,
    Permutation,
    cycle_from,
    cyclic_shift,
    identity,
    make_generators,
)
from neumann_rfg.stabilizer_chains import (
    build_chain,
    closure_order,
    contains,
    group_order,
    verify_alt_generation,
)


class TestBuildChain:
    @pytest.mark.parametrize("d, r1, r2", [(5, 2, 2), (7, 2, 3), (11, 3, 3), (13, 4, 4)])
    def test_coordinate_generators_give_alt(self, d: int, r1: int, r2: int) -> None:
        chain = build_chain(make_generators(d, r1, r2))

        assert group_order(chain) == math.factorial(d) // 2

    def test_order_for_degree_eleven(self) -> None:
        assert group_order(build_chain(make_generators(11, 3, 3))) == 19_958_400

    def test_cyclic_group_falls_back_to_full_verification(self) -> None:
        assert group_order(build_chain([cyclic_shift(7)])) == 7

    def test_symmetric_group(self) -> None:
        chain = build_chain([cyclic_shift(6), cycle_from([0, 1], 6)])

        assert group_order(chain) == math.factorial(6)

    def test_trivial_generators(self) -> None:
        chain = build_chain([identity(5)])

        assert group_order(chain) == 1
        assert chain.base == []

    def test_is_deterministic(self) -> None:
        first = build_chain(make_generators(13, 4, 4))
        second = build_chain(make_generators(13, 4, 4))

        assert first.base == second.base
        assert first.transversal_sizes == second.transversal_sizes

    def test_mixed_degrees(self) -> None:
        with pytest.raises(DegreeMismatchError):
            build_chain([identity(5), identity(6)])

    def test_resulting_chain_is_complete(self) -> None:
        assert build_chain(make_generators(7, 2, 3)).is_complete()


class TestMembership:
    def test_sift_strips_group_elements(self) -> None:
        alpha, beta = make_generators(7, 2, 2)
        chain = build_chain([alpha, beta])

        residue, stop = chain.sift(alpha * beta * alpha)

        assert residue.is_identity()
        assert stop == len(chain.base)

    def test_contains(self) -> None:
        alpha, beta = make_generators(7, 2, 2)
        chain = build_chain([alpha, beta])

        assert contains(chain, cycle_from([1, 3, 6], 7))
        assert not contains(chain, cycle_from([0, 1], 7))


class TestVerifyAltGeneration:
    def test_true_for_valid_triples(self) -> None:
        assert verify_alt_generation(13, 4, 4)
        assert verify_alt_generation(17, 2, 2)


class TestClosureOrder:
    @pytest.mark.parametrize(
        "gens, expected",
        [
            ([identity(5)], 1),
            ([cycle_from([0, 1, 2], 3)], 3),
            ([cyclic_shift(7)], 7),
            ([cyclic_shift(4), cycle_from([0, 1], 4)], 24),
            (list(make_generators(5, 2, 2)), 60),
            ([cyclic_shift(6), cycle_from([0, 1], 6)], 720),
            (list(make_generators(7, 2, 3)), 2520),
        ],
    )
    def test_matches_chain_order(self, gens: list[Permutation], expected: int) -> None:
        assert closure_order(gens) == expected == group_order(build_chain(gens))

    def test_limit(self) -> None:
        with pytest.raises(ValueError):
            closure_order(make_generators(7, 2, 2), limit=100)

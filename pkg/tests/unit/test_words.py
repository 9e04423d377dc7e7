import pytest

from neumann_rfg.words import (
    InvalidWordError,
    Word,
    commutator,
    conjugate,
    count_reduced,
    enumerate_reduced,
    free_reduce,
    power_word,
    random_reduced,
    walk_reduced,
)


class TestWord:
    def test_rejects_unknown_letters(self) -> None:
        with pytest.raises(InvalidWordError) as exc:
            Word("abc")

        assert "unknown letter 'c'" in str(exc.value)

    def test_rejects_unreduced(self) -> None:
        with pytest.raises(InvalidWordError):
            Word("abBa")

    def test_inverse(self) -> None:
        assert Word("ab").inverse == "BA"

    def test_then_reduces(self) -> None:
        assert Word("ab").then("Ba") == "aa"

    def test_exponent_sum(self) -> None:
        assert Word("aabAb").exponent_sum_a == 1


class TestFreeReduce:
    def test_cancels_nested_pairs(self) -> None:
        assert free_reduce("abBA") == ""
        assert free_reduce("aabBAb") == "ab"

    def test_rejects_unknown_letters(self) -> None:
        with pytest.raises(InvalidWordError):
            free_reduce("ax")


class TestEnumeration:
    def test_first_layer_in_letter_order(self) -> None:
        assert list(enumerate_reduced(1)) == ["", "a", "A", "b", "B"]

    @pytest.mark.parametrize("n", [0, 1, 2, 5, 8])
    def test_count_matches_enumeration(self, n: int) -> None:
        words = list(enumerate_reduced(n))

        assert len(words) == count_reduced(n)
        assert len(set(words)) == len(words)

    def test_count_up_to_eight(self) -> None:
        assert count_reduced(8) == 13121

    def test_walk_visits_every_nonempty_word(self) -> None:
        children = [child for _, child in walk_reduced(3)]

        assert sorted(children) == sorted(w for w in enumerate_reduced(3) if w)

    def test_walk_parent_is_prefix(self) -> None:
        assert all(child[:-1] == parent for parent, child in walk_reduced(3))


class TestRandomReduced:
    def test_length_and_reducedness(self) -> None:
        word = random_reduced(40, 7)

        assert len(word) == 40
        assert free_reduce(word) == word

    def test_seeded(self) -> None:
        assert random_reduced(30, 11) == random_reduced(30, 11)


class TestProducts:
    def test_power_word(self) -> None:
        assert power_word("a", 3) == "aaa"
        assert power_word("a", -3) == "AAA"
        assert power_word("b", 0) == ""

    def test_commutator(self) -> None:
        assert commutator("a", "b") == "ABab"

    def test_conjugate(self) -> None:
        assert conjugate("b", "aa") == "aabAA"

    def test_witness_shape(self) -> None:
        word = commutator("b", conjugate("b", power_word("a", 2)))

        assert word == "BaaBAAbaabAA"
        assert len(word) == 4 + 4 * 2

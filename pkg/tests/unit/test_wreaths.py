import pytest
from hypothesis import given
from hypothesis import strategies as st

from neumann_rfg.words import enumerate_reduced
from neumann_rfg.wreaths import (
    ALPHA_INF,
    BETA_INF,
    WREATH_IDENTITY,
    WreathElement,
    lamp_data,
    normal_form_word,
    w_eval,
    w_inv,
    w_mul,
)


class TestWreathElement:
    def test_from_map_reduces_mod_three(self) -> None:
        element = WreathElement.from_map({0: 3, 1: 4, -2: -1}, 5)

        assert element.lamps == ((-2, 2), (1, 1))
        assert element.shift == 5

    def test_identity(self) -> None:
        assert WREATH_IDENTITY.is_identity()
        assert not ALPHA_INF.is_identity()


class TestArithmetic:
    def test_generators(self) -> None:
        assert w_eval("a") == ALPHA_INF
        assert w_eval("b") == BETA_INF

    def test_product_moves_lamps_by_shift(self) -> None:
        assert w_mul(ALPHA_INF, BETA_INF) == WreathElement(((1, 1),), 1)

    def test_inverse(self) -> None:
        element = w_eval("abAAbb")

        assert w_mul(element, w_inv(element)).is_identity()
        assert w_mul(w_inv(element), element).is_identity()

    def test_associative(self) -> None:
        x, y, z = w_eval("ab"), w_eval("Bab"), w_eval("AAb")

        assert w_mul(w_mul(x, y), z) == w_mul(x, w_mul(y, z))

    @pytest.mark.parametrize("u, v", [("ab", "BA"), ("aab", "bAb"), ("", "b")])
    def test_eval_is_a_homomorphism(self, u: str, v: str) -> None:
        assert w_eval(u + v) == w_mul(w_eval(u), w_eval(v))

    def test_conjugate_places_lamp(self) -> None:
        assert w_eval("aaabAAA") == WreathElement(((3, 1),), 0)

    def test_lamp_cube_is_trivial(self) -> None:
        assert w_eval("bbb").is_identity()

    def test_witness_is_wreath_trivial(self) -> None:
        assert w_eval("BaaBAAbaabAA").is_identity()


class TestNormalForm:
    def test_lamp_data(self) -> None:
        assert lamp_data(w_eval("abAB")) == ({1: 1, 0: 2}, 0)

    def test_lamps_at_zero_and_one(self) -> None:
        assert lamp_data(w_eval("babA")) == ({0: 1, 1: 1}, 0)

    def test_normal_form_word_evaluates_back(self) -> None:
        for word in enumerate_reduced(5):
            element = w_eval(word)

            assert w_eval(normal_form_word(element)) == element


words = st.text(alphabet="aAbB", max_size=30)


class TestProperties:
    @given(u=words, v=words)
    def test_eval_is_a_homomorphism(self, u: str, v: str) -> None:
        assert w_eval(u + v) == w_mul(w_eval(u), w_eval(v))

    @given(u=words)
    def test_inverse_word(self, u: str) -> None:
        inverse_word = u[::-1].swapcase()

        assert w_eval(inverse_word) == w_inv(w_eval(u))

    @given(u=words)
    def test_lamps_stay_within_word_length(self, u: str) -> None:
        lamps, shift = lamp_data(w_eval(u))

        assert abs(shift) <= len(u)
        assert all(-len(u) <= pos <= len(u) for pos in lamps)
        assert all(val in (1, 2) for val in lamps.values())

    @given(k=st.integers(-1000, 1000).filter(bool))
    def test_alpha_has_infinite_order(self, k: int) -> None:
        power = WREATH_IDENTITY
        step = ALPHA_INF if k > 0 else w_inv(ALPHA_INF)
        for _ in range(abs(k)):
            power = w_mul(power, step)

        assert power.shift == k
        assert not power.is_identity()

    @given(k=st.integers(0, 50))
    def test_beta_has_order_three(self, k: int) -> None:
        assert w_eval("b" * k).is_identity() == (k % 3 == 0)

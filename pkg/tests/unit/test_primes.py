import numpy as np
import pytest

from neumann_rfg.configs import VerifyConfig
from neumann_rfg.primes import (
    is_prime,
    next_prime,
    prime_sieve,
    primes_below,
    smallest_prime_at_least,
)
from neumann_rfg.verification import check_bertrand


class TestIsPrime:
    def test_small_values(self) -> None:
        assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_carmichael_number(self) -> None:
        assert not is_prime(561)

    def test_strong_pseudoprime_to_small_bases(self) -> None:
        assert not is_prime(3215031751)

    def test_mersenne_prime(self) -> None:
        assert is_prime(2**61 - 1)

    def test_agrees_with_sieve(self) -> None:
        sieve = prime_sieve(5000)

        assert all(is_prime(n) == bool(sieve[n]) for n in range(5001))


class TestNextPrime:
    @pytest.mark.parametrize(
        "x, expected", [(0, 2), (2, 2), (3, 3), (14, 17), (17, 17), (33, 37), (2313, 2333)]
    )
    def test_smallest_prime_at_least(self, x: int, expected: int) -> None:
        assert next_prime(x) == expected


class TestSieve:
    def test_primes_below(self) -> None:
        assert primes_below(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]

    def test_smallest_prime_at_least(self) -> None:
        xs = np.array([3, 4, 14, 24])

        assert smallest_prime_at_least(xs, primes_below(40)).tolist() == [3, 5, 17, 29]

    def test_sieve_too_short(self) -> None:
        with pytest.raises(ValueError):
            smallest_prime_at_least(np.array([38]), primes_below(40))

    def test_primes_below_matches_is_prime(self) -> None:
        assert primes_below(2000).tolist() == [n for n in range(2001) if is_prime(n)]


class TestCheckBertrand:
    def test_small_limit(self) -> None:
        assert check_bertrand(VerifyConfig(bertrand_limit=1000)) == 998

import pytest

from totient_moments import sieve_primes


@pytest.fixture(scope="session")
def table():
    return sieve_primes(10**6)


@pytest.fixture(scope="session")
def small_table():
    return sieve_primes(10**4)

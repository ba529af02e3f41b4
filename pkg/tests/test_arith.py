import math
import random
from fractions import Fraction

import numpy as np
import pytest

from totient_moments import (
    BoundsError,
    DomainError,
    euler_phi,
    factorize,
    is_prime,
    mobius,
    phi_sieve,
    sieve_primes,
    totient_ratio,
    totient_ratio_parts,
)


def bool_sieve(limit):
    """Independent boolean Eratosthenes oracle."""
    flags = np.ones(limit + 1, bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags)


def test_sieve_small_examples():
    assert sieve_primes(10).primes.tolist() == [2, 3, 5, 7]
    assert sieve_primes(2).primes.tolist() == [2]


def test_sieve_limit_bounds():
    with pytest.raises(BoundsError):
        sieve_primes(1)
    with pytest.raises(BoundsError):
        sieve_primes(10**8 + 1)


def test_sieve_against_independent_oracle(table):
    assert table.primes.size == 78498  # pi(10^6)
    oracle = bool_sieve(20000)
    assert np.array_equal(table.primes_up_to(20000), oracle)


def test_spf_invariants(table):
    rng = random.Random(7)
    spf = table.spf
    assert spf[0] == 0 and spf[1] == 1
    for _ in range(2000):
        n = rng.randrange(2, table.limit + 1)
        p = int(spf[n])
        assert is_prime(p)
        assert n % p == 0
        assert all(n % q for q in range(2, p))


def test_primes_up_to_requires_coverage(table):
    with pytest.raises(BoundsError):
        table.primes_up_to(table.limit + 1)


def test_factorize_examples(table):
    assert factorize(1, table).factors == ()
    assert factorize(360, table).factors == ((2, 3), (3, 2), (5, 1))
    f = factorize(10**12 + 39, table)
    prod = 1
    for p, e in f.factors:
        assert is_prime(p)
        prod *= p**e
    assert prod == 10**12 + 39


def test_factorize_rejects_nonpositive(table):
    with pytest.raises(DomainError):
        factorize(0, table)
    with pytest.raises(DomainError):
        factorize(-5, table)


def test_factorize_matches_across_paths(small_table, table):
    # Same value through the spf walk and through trial division + rho.
    for n in (9973 * 9967, 2**40 + 15, 10**8 + 7, 600851475143):
        via_small = factorize(n, small_table)
        via_big = factorize(n, table)
        assert via_small.factors == via_big.factors


def test_factorize_product_roundtrip(table):
    rng = random.Random(2024)
    small_pool = [int(p) for p in table.primes[:1229]]  # primes <= 10^4
    big_pool = []
    while len(big_pool) < 40:
        c = rng.randrange(10**6, 10**9) | 1
        while not is_prime(c):
            c += 2
        big_pool.append(c)
    for trial in range(10**4):
        k = rng.randint(1, 4)
        pool = small_pool if trial % 25 else big_pool
        primes = sorted(rng.sample(pool, k))
        factors = tuple((p, rng.randint(1, 3) if p < 10**4 else 1) for p in primes)
        n = 1
        for p, e in factors:
            n *= p**e
        if n >= 2**63:
            continue
        assert factorize(n, table).factors == factors


def test_euler_phi_examples(table):
    assert euler_phi(factorize(1, table)) == 1
    assert euler_phi(factorize(12, table)) == 4
    for p in (2, 97, 9973):
        assert euler_phi(factorize(p, table)) == p - 1


def test_euler_phi_against_coprime_count(table):
    for n in range(1, 2001):
        direct = sum(1 for m in range(1, n + 1) if math.gcd(m, n) == 1)
        assert euler_phi(factorize(n, table)) == direct


def test_euler_phi_against_sieve(table):
    phis = phi_sieve(10**4)
    for n in range(1, 10**4 + 1):
        assert euler_phi(factorize(n, table)) == int(phis[n])


def test_phi_multiplicative(table):
    rng = random.Random(11)
    done = 0
    while done < 300:
        m = rng.randrange(2, 10**6)
        n = rng.randrange(2, 10**6)
        if math.gcd(m, n) != 1:
            continue
        fm, fn, fmn = factorize(m, table), factorize(n, table), factorize(m * n, table)
        assert euler_phi(fmn) == euler_phi(fm) * euler_phi(fn)
        done += 1


def test_phi_super_multiplicative(table):
    rng = random.Random(12)
    for _ in range(300):
        m = rng.randrange(2, 10**6)
        n = rng.randrange(2, 10**6)
        assert euler_phi(factorize(m * n, table)) >= euler_phi(
            factorize(m, table)
        ) * euler_phi(factorize(n, table))


def test_mobius_examples(table):
    assert mobius(factorize(1, table)) == 1
    assert mobius(factorize(6, table)) == 1
    assert mobius(factorize(12, table)) == 0
    assert mobius(factorize(30, table)) == -1


def test_totient_ratio_examples(table):
    assert totient_ratio(factorize(1, table)) == 1
    assert totient_ratio(factorize(30, table)) == Fraction(15, 4)
    assert totient_ratio(factorize(2**10, table)) == 2
    r = totient_ratio(factorize(360, table))
    assert math.gcd(r.numerator, r.denominator) == 1


def test_ratio_equals_squarefree_divisor_phi_sum(table):
    # n/phi(n) = sum over squarefree d | n of 1/phi(d), exactly.
    for n in range(1, 10**4 + 1):
        f = factorize(n, table)
        ps = f.distinct_primes()
        total = Fraction(0)
        for bits in range(1 << len(ps)):
            d_phi = 1
            for i, p in enumerate(ps):
                if bits >> i & 1:
                    d_phi *= p - 1
            total += Fraction(1, d_phi)
        assert total == totient_ratio(f)


def test_ratio_depends_only_on_radical(table):
    assert totient_ratio(factorize(12, table)) == totient_ratio(factorize(6, table))
    assert totient_ratio(factorize(360, table)) == totient_ratio(factorize(30, table))


def test_bulk_ratio_parts_matches_single(table):
    rng = random.Random(5)
    vals = [1, 2, 30, 360, 2**10, 10**6 - 1]
    vals += [rng.randrange(1, 10**6) for _ in range(500)]
    vals += [rng.randrange(10**9, 10**12) for _ in range(50)]
    arr = np.asarray(vals, dtype=np.int64)
    num, den = totient_ratio_parts(arr, table)
    for v, n, d in zip(vals, num.tolist(), den.tolist()):
        assert Fraction(n, d) == totient_ratio(factorize(v, table))


def test_bulk_ratio_thread_invariance(table):
    rng = random.Random(6)
    arr = np.asarray([rng.randrange(1, 10**10) for _ in range(200000)], np.int64)
    n1, d1 = totient_ratio_parts(arr, table, threads=1)
    n4, d4 = totient_ratio_parts(arr, table, threads=4)
    assert np.array_equal(n1, n4) and np.array_equal(d1, d4)


def test_bulk_ratio_rejects_nonpositive(table):
    with pytest.raises(DomainError):
        totient_ratio_parts(np.asarray([3, 0], np.int64), table)

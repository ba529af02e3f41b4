import math
import itertools
from fractions import Fraction

import pytest

from totient_moments import (
    BoundsError,
    CapacityError,
    DivergenceError,
    DomainError,
    MultiplicativeSpec,
    enumerate_smooth,
    euler_product_bound,
    factorize,
    inverse_weight_prime_sum,
    lcm_tuple_weight,
    lcm_tuple_weight_at_prime,
    mobius,
    prime_harmonic_sum,
    smooth_divisor_sum,
)


def test_enumerate_examples(table):
    assert enumerate_smooth(2, table).members == (1, 2)
    assert enumerate_smooth(3, table).members == (1, 2, 3, 6)
    d10 = enumerate_smooth(10, table)
    assert len(d10) == 16
    assert max(d10.members) == 210


def test_enumerate_validation(table):
    with pytest.raises(DomainError):
        enumerate_smooth(1.5, table)
    with pytest.raises(CapacityError):
        enumerate_smooth(101, table)  # pi(101) = 26 > cap


def test_smooth_set_invariants(table):
    for y in (2.0, 7.0, 13.0):
        dset = enumerate_smooth(y, table)
        assert len(dset) == 2 ** len(dset.primes)
        primorial = math.prod(dset.primes)
        assert list(dset.members) == sorted(dset.members)
        for n in dset.members:
            assert primorial % n == 0
            assert mobius(factorize(n, table)) != 0
            ps = dset.factor(n)
            assert math.prod(ps) == n
            assert all(p <= y for p in ps)


def test_weight_at_prime_examples():
    assert lcm_tuple_weight_at_prime(2, 1) == Fraction(1, 2)
    assert lcm_tuple_weight_at_prime(2, 2) == Fraction(5, 4)
    assert lcm_tuple_weight_at_prime(5, 3) == Fraction(91, 125)


def test_weight_at_prime_binomial_sum_oracle():
    for p in (2, 3, 7, 13):
        for s in (1, 2, 3, 5, 8):
            direct = sum(
                Fraction(math.comb(s, k), p**k) for k in range(1, s + 1)
            )
            assert lcm_tuple_weight_at_prime(p, s) == direct


def test_weight_at_prime_power_bounds():
    with pytest.raises(DomainError):
        lcm_tuple_weight_at_prime(2, 0)
    with pytest.raises(DomainError):
        lcm_tuple_weight_at_prime(2, 65)


def test_weight_examples():
    assert lcm_tuple_weight(1, 3) == 1
    assert lcm_tuple_weight(6, 1) == Fraction(1, 6)
    # Frozen from the brute-force tuple enumeration below.
    assert lcm_tuple_weight(6, 2) == Fraction(35, 36)


def test_weight_rejects_bad_inputs():
    with pytest.raises(DomainError):
        lcm_tuple_weight(12, 2)  # not squarefree
    with pytest.raises(DomainError):
        lcm_tuple_weight(103, 2)  # prime beyond the admissible range


def tuple_sum_oracle(members, n, s):
    """Direct sum over all s-tuples of members with lcm n of prod 1/d_i."""
    total = Fraction(0)
    for tup in itertools.product(members, repeat=s):
        if math.lcm(*tup) == n:
            term = Fraction(1)
            for d in tup:
                term = term / d
            total += term
    return total


def test_weight_matches_tuple_oracle_small(table):
    dset = enumerate_smooth(6, table)  # {1,2,3,5,6,10,15,30}
    for s in (1, 2, 3):
        for n in dset.members:
            assert lcm_tuple_weight(n, s) == tuple_sum_oracle(dset.members, n, s)


def test_weight_multiplicative_on_coprime_pairs(table):
    dset = enumerate_smooth(10, table)
    for s in (1, 2, 3):
        for m in dset.members:
            for n in dset.members:
                if m > 1 and n > 1 and math.gcd(m, n) == 1:
                    assert lcm_tuple_weight(m * n, s) == lcm_tuple_weight(
                        m, s
                    ) * lcm_tuple_weight(n, s)


def test_euler_product_examples(table):
    unit = MultiplicativeSpec.unit()
    assert euler_product_bound(3, 1, unit, table) == Fraction(2)
    assert euler_product_bound(3, 2, unit, table) == Fraction(4)
    # Golden value recomputed by direct evaluation (also checked below).
    got = euler_product_bound(10, 1, MultiplicativeSpec.power_root(2), table)
    assert got == pytest.approx(1.853354607708981, abs=1e-12)


def test_euler_product_against_direct_evaluation(table):
    expected = 1.0
    for p in (2, 3, 5, 7):
        expected *= 1.0 + ((1.0 + 1.0 / p) - 1.0) / math.sqrt(p)
    got = euler_product_bound(10, 1, MultiplicativeSpec.power_root(2), table)
    assert got == pytest.approx(expected, rel=1e-14)


def test_euler_product_identity_exact(table):
    """sum over the smooth set of weight(n)/g(n) equals the product."""
    weights = (
        MultiplicativeSpec.unit(),
        MultiplicativeSpec.linear_min(3),
        MultiplicativeSpec.shifted_min(2),
        MultiplicativeSpec.linear_min(1),
    )
    for y in (3.0, 13.0, 37.0):  # pi(y) up to 12
        dset = enumerate_smooth(y, table)
        for s in (1, 2, 5):
            for g in weights:
                total = Fraction(0)
                for n in dset.members:
                    total += lcm_tuple_weight(n, s) / g.at_squarefree(dset.factor(n))
                assert total == euler_product_bound(y, s, g, table)


def test_divisor_sum_examples(table):
    lhs, rhs = smooth_divisor_sum(factorize(1, table), 100)
    assert lhs == rhs == 1
    lhs, rhs = smooth_divisor_sum(factorize(12, table), 2)
    assert lhs == rhs == Fraction(3, 2)
    lhs, rhs = smooth_divisor_sum(factorize(30, table), 4)
    assert lhs == rhs == 2


def test_divisor_sum_identity_range(table):
    for y in (2.0, 5.0, 10.0, 100.0):
        for n in range(1, 2001):
            lhs, rhs = smooth_divisor_sum(factorize(n, table), y)
            assert lhs == rhs


def test_mean_value_bound_exact_rationals(table):
    # (1+1/p)^s - 1 < e s/p for s < p, via a rational cut below e.
    e_num, e_den = 27182818284, 10**10
    for p in (int(q) for q in table.primes_up_to(1000)):
        an = bn = 1
        for s in range(1, p):
            an *= p + 1
            bn *= p
            assert p * (an - bn) * e_den < e_num * s * bn, (p, s)


def test_inverse_weight_sum_power_root(table):
    partial, tail = inverse_weight_prime_sum(
        MultiplicativeSpec.power_root(1), 10, table
    )
    assert partial == pytest.approx(float(Fraction(18589, 44100)), abs=1e-15)
    assert tail == pytest.approx(0.1)  # d * P^(-1/d) with d = 1


def test_inverse_weight_sum_divergent():
    import totient_moments as tm

    with pytest.raises(DivergenceError):
        inverse_weight_prime_sum(MultiplicativeSpec.unit(), 100, tm.sieve_primes(1000))


def test_inverse_weight_sum_brackets_reference(table):
    g = MultiplicativeSpec.shifted_min(2)
    partial, tail = inverse_weight_prime_sum(g, 100, table)
    reference, _ = inverse_weight_prime_sum(g, 10**6, table)
    assert partial <= reference <= partial + tail
    g2 = MultiplicativeSpec.linear_min(5)
    partial, tail = inverse_weight_prime_sum(g2, 100, table)
    reference, _ = inverse_weight_prime_sum(g2, 10**6, table)
    assert partial <= reference <= partial + tail


def test_inverse_weight_sum_c0_validation(table):
    g = MultiplicativeSpec.shifted_min(2)  # inf g(p) = g(2) = 1/2
    inverse_weight_prime_sum(g, 100, table, c0=0.5)
    with pytest.raises(DomainError):
        inverse_weight_prime_sum(g, 100, table, c0=0.6)


def test_inverse_weight_sum_custom_rejected(table):
    g = MultiplicativeSpec.custom({(2, 1): Fraction(3, 2)})
    with pytest.raises(DomainError):
        inverse_weight_prime_sum(g, 100, table)


def test_prime_harmonic_examples(table):
    assert prime_harmonic_sum(2, table) == 0.5
    assert prime_harmonic_sum(10, table) == pytest.approx(
        math.fsum([1 / 2, 1 / 3, 1 / 5, 1 / 7]), abs=0
    )
    mertens = math.log(math.log(10**6)) + 0.2615
    assert abs(prime_harmonic_sum(10**6, table) - mertens) < 0.01
    with pytest.raises(BoundsError):
        prime_harmonic_sum(10**7, table)


def test_multiplicative_spec_values():
    lin = MultiplicativeSpec.linear_min(3)
    assert lin.at_prime(2) == 1
    assert lin.at_prime(5) == Fraction(5, 3)
    assert lin.at_prime_power(5, 2) == 1
    shift = MultiplicativeSpec.shifted_min(2)
    assert shift.at_prime(2) == Fraction(1, 2)
    assert shift.at_prime(5) == 2
    root = MultiplicativeSpec.power_root(2)
    assert root.at_prime(9973) == pytest.approx(math.sqrt(9973), rel=1e-15)
    assert root.at_squarefree((2, 3, 5)) == pytest.approx(math.sqrt(30), rel=1e-15)
    assert not root.rational and lin.rational
    with pytest.raises(DomainError):
        MultiplicativeSpec.custom({(2, 1): Fraction(-1)})
    with pytest.raises(DomainError):
        MultiplicativeSpec.power_root(0)

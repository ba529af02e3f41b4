import math

import pytest

from totient_moments import (
    BoundsError,
    CapacityError,
    DomainError,
    LinearDeltaSpec,
    MultiplicativeSpec,
    PolynomialSpec,
    count_roots,
    divisible_count,
    enumerate_smooth,
    fit_divisibility_bound,
    linear_delta_sequence,
    poly_int_sequence,
    poly_prime_sequence,
)


def test_polynomial_validation():
    with pytest.raises(DomainError):
        PolynomialSpec((5,))  # degree 0
    with pytest.raises(DomainError):
        PolynomialSpec((5, -1))  # negative leading coefficient
    with pytest.raises(DomainError):
        PolynomialSpec((2, 0, 2))  # content 2
    spec = PolynomialSpec((1, 0, 1))
    assert spec.degree == 2
    assert spec.tau == 2
    assert spec.evaluate(7) == 50


def test_poly_int_examples():
    assert poly_int_sequence(PolynomialSpec((0, 1)), 3).values.tolist() == [1, 2, 3]
    seq = poly_int_sequence(PolynomialSpec((1, 0, 1)), 4)
    assert seq.values.tolist() == [2, 5, 10, 17]
    assert seq.count == 4
    assert poly_int_sequence(PolynomialSpec((3, 2)), 5).values.tolist() == [5, 7, 9, 11, 13]


def test_poly_int_declared_bound():
    spec = PolynomialSpec((1, 0, 1))
    seq = poly_int_sequence(spec, 1000.5)
    assert seq.count == 1000
    assert seq.bound == 2 * 1000.5**2
    assert int(seq.values.max()) <= seq.bound


def test_poly_int_positivity_error():
    with pytest.raises(DomainError):
        poly_int_sequence(PolynomialSpec((-5, 1)), 10)  # f(1) = -4


def test_poly_int_overflow_error():
    spec = PolynomialSpec((0, 0, 0, 0, 0, 0, 0, 1))  # n^7
    with pytest.raises(CapacityError):
        poly_int_sequence(spec, 10**9)


def test_poly_prime_examples(table):
    seq = poly_prime_sequence(PolynomialSpec((-1, 1)), 10, table)
    assert seq.values.tolist() == [1, 2, 4, 6]
    assert seq.count == 4
    assert poly_prime_sequence(PolynomialSpec((1, 0, 1)), 5, table).values.tolist() == [5, 10, 26]
    one = poly_prime_sequence(PolynomialSpec((0, 1)), 2, table)
    assert one.values.tolist() == [2] and one.count == 1


def test_poly_prime_range_check(small_table):
    with pytest.raises(BoundsError):
        poly_prime_sequence(PolynomialSpec((0, 1)), 10**5, small_table)


def test_linear_delta_examples():
    x = math.exp(5)
    seq = linear_delta_sequence(LinearDeltaSpec(a=1, shifts=(0, 1), x=x, eta=1.0))
    by_b = dict(zip(seq.indices.tolist(), seq.values.tolist()))
    assert by_b[3] == 6  # |3 * 2|
    assert 0 not in by_b and 1 not in by_b  # shifts excluded
    seq2 = linear_delta_sequence(LinearDeltaSpec(a=2, shifts=(0, 1), x=x, eta=1.0))
    assert dict(zip(seq2.indices.tolist(), seq2.values.tolist()))[3] == 48


def test_linear_delta_validation():
    x = math.exp(5)
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=0, shifts=(0, 1), x=x, eta=1.0)
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=1, shifts=(3,), x=x, eta=1.0)
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=1, shifts=(1, 1), x=x, eta=1.0)
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=1, shifts=(0, 9), x=x, eta=1.0)  # |b_i| > log x
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=1, shifts=(0, 1), x=x, eta=1e-8)
    with pytest.raises(DomainError):
        LinearDeltaSpec(a=1, shifts=(0, 1), x=x, eta=1.2)
    # lower eta edge is admissible
    LinearDeltaSpec(a=1, shifts=(0, 1), x=x, eta=math.log(x) ** -0.9)


def test_linear_delta_count_and_bound():
    x = math.exp(20)
    spec = LinearDeltaSpec(a=1, shifts=(0, 2, 6), x=x, eta=1.0)
    seq = linear_delta_sequence(spec)
    assert seq.count == 41 - 3
    assert int(seq.values.max()) <= seq.bound == (2 * 20.0) ** 3
    assert int(seq.values.min()) >= 1


def test_divisible_count_examples(table):
    seq = poly_int_sequence(PolynomialSpec((1, 0, 1)), 10)
    assert divisible_count(seq, 1) == seq.count
    assert divisible_count(seq, 5) == 4  # n = 2, 3, 7, 8
    lin = poly_int_sequence(PolynomialSpec((0, 1)), 10)
    assert divisible_count(lin, 3) == 3
    with pytest.raises(DomainError):
        divisible_count(seq, 0)


def test_omega_monotone_under_divisibility():
    seq = poly_int_sequence(PolynomialSpec((1, 0, 1)), 5000)
    for d, dd in ((1, 2), (2, 10), (5, 65), (13, 26), (5, 25)):
        assert divisible_count(seq, dd) <= divisible_count(seq, d)


def test_omega_zero_when_no_roots(table):
    spec = PolynomialSpec((1, 0, 1))
    seq = poly_int_sequence(spec, 5000)
    for d in range(1, 60):
        if count_roots(spec, d).count == 0:
            assert divisible_count(seq, d) == 0


def test_omega_close_to_density(table):
    # |omega(d) - rho(f, d) N / d| <= rho(f, d) for the integer family.
    spec = PolynomialSpec((1, 0, 1))
    seq = poly_int_sequence(spec, 5000)
    for d in range(1, 101):
        rho = count_roots(spec, d).count
        omega = divisible_count(seq, d)
        assert abs(omega - rho * seq.count / d) <= rho


def test_fit_divisibility_unit_weight(table):
    seq = poly_int_sequence(PolynomialSpec((0, 1)), 100)
    dset = enumerate_smooth(3, table)
    fit = fit_divisibility_bound(seq, MultiplicativeSpec.unit(), dset)
    assert fit.constant == 100.0  # omega(1) = N dominates
    assert fit.witness == 1
    assert fit.gamma == 1.0


def test_fit_divisibility_power_root(table):
    seq = poly_int_sequence(PolynomialSpec((1, 0, 1)), 10**4)
    dset = enumerate_smooth(7, table)
    fit = fit_divisibility_bound(seq, MultiplicativeSpec.power_root(2), dset)
    assert fit.constant >= seq.count  # omega(1) * 1
    assert fit.gamma <= 4 * 2  # generous cap: gamma stays O(d)


def test_fit_divisibility_linear_delta(table):
    x = math.exp(20)
    seq = linear_delta_sequence(LinearDeltaSpec(a=1, shifts=(0, 2, 6), x=x, eta=1.0))
    dset = enumerate_smooth(5, table)
    fit = fit_divisibility_bound(seq, MultiplicativeSpec.linear_min(3), dset)
    assert fit.constant <= 1.5 * 3 * 1.0 * math.log(x)


def test_values_within_bound_all_families(table):
    for seq in (
        poly_int_sequence(PolynomialSpec((3, 2)), 777),
        poly_prime_sequence(PolynomialSpec((1, 0, 1)), 999, table),
        linear_delta_sequence(LinearDeltaSpec(a=2, shifts=(0, 3), x=math.exp(9), eta=0.8)),
    ):
        assert int(seq.values.max()) <= seq.bound
        assert int(seq.values.min()) >= 1
        assert seq.count == seq.values.size == seq.indices.size


def test_values_are_read_only():
    seq = poly_int_sequence(PolynomialSpec((0, 1)), 10)
    with pytest.raises(ValueError):
        seq.values[0] = 99

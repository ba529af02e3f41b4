#!/usr/bin/env python3
"""Squarefree smooth sets and the exact identities built on them.

Walks through the three exact identities the library verifies in rational
arithmetic: the divisor-sum identity, multiplicativity of the lcm-tuple
weight, and the Euler-product identity over a smooth set.
"""

from fractions import Fraction

import totient_moments as tm

table = tm.sieve_primes(10**4)

# The squarefree 10-smooth set: all subset products of {2, 3, 5, 7}.
dset = tm.enumerate_smooth(10, table)
print(f"D(y=10) has 2^{len(dset.primes)} = {len(dset)} members:")
print(" ", dset.members)

# Divisor-sum identity: prod_{p|n, p<=y}(1+1/p) equals the sum of 1/d
# over squarefree y-smooth divisors d of n. Both sides are computed
# independently and match exactly.
for n, y in ((30, 4), (360, 10), (9240, 100)):
    lhs, rhs = tm.smooth_divisor_sum(tm.factorize(n, table), y)
    print(f"n={n:5d} y={y:3d}: product side {lhs} == divisor sum {rhs}")
    assert lhs == rhs

# The lcm-tuple weight w_s(n): per prime it is (1+1/p)^s - 1, and on the
# smooth set it is multiplicative. Summing w_s(n)/g(n) over the whole set
# factors exactly into an Euler product.
g = tm.MultiplicativeSpec.linear_min(3)
for s in (1, 2, 3):
    total = Fraction(0)
    for n in dset.members:
        total += tm.lcm_tuple_weight(n, s) / g.at_squarefree(dset.factor(n))
    product = tm.euler_product_bound(10, s, g, table)
    print(f"s={s}: sum over D = {total} == product over p<=10 = {product}")
    assert total == product

# The weight itself comes from counting s-tuples of squarefree divisors
# by their lcm; for n = 6, s = 2 the direct tuple sum gives 35/36.
print("w_2(6) =", tm.lcm_tuple_weight(6, 2))

# Convergence data for the bound machinery: partial sums of 1/(p g(p))
# with a rigorous tail overestimate.
for g in (tm.MultiplicativeSpec.power_root(2), tm.MultiplicativeSpec.shifted_min(2)):
    partial, tail = tm.inverse_weight_prime_sum(g, 1000, table)
    print(f"sum 1/(p g(p)) for {g.label()}: {partial:.6f} + tail <= {tail:.2e}")

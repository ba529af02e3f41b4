#!/usr/bin/env python3
"""Primes in arithmetic progressions: exact counts vs upper bounds.

pi(x; k, a) never strays far above x/(phi(k) log(x/k)); the classical
upper bound (2+eps) x/(phi(k) log(2x/k)) holds with lots of room at desk
scale. For a polynomial over primes, the divisibility counter omega(n)
splits exactly into progression counts over the roots of f mod n.
"""

import totient_moments as tm

table = tm.sieve_primes(10**6)
x = 10**6

rep = tm.brun_titchmarsh_report(x, 100, 0.5, table)
print(f"x = {x:.0e}, k <= {rep.k_max}, eps = {rep.epsilon}")
print(f"worst ratio pi(x;k,a) phi(k) log(2x/k) / ((2+eps)x) = "
      f"{rep.max_ratio:.4f} at (k, a) = {rep.witness}")
for row in rep.rows[:6]:
    print(f"  k={row['k']:3d}: max pi(x;k,a) = {row['max_count']:6d} "
          f"(a={row['max_count_a']}), classical bound {row['classic_bound']:9.0f}, "
          f"working bound {row['working_bound']:9.0f}")

# omega(n) = sum over roots alpha of f mod n of pi(x; n, alpha), exactly.
poly = tm.PolynomialSpec((1, 0, 1))
print(f"\ndecomposition of omega(n) for f(p) = p^2 + 1 over primes p <= {x:.0e}:")
for n in (2, 5, 10, 13, 65):
    omega, decomposed, per_root = tm.progression_decomposition(poly, n, x, table)
    parts = " + ".join(f"pi(x;{n},{r})={c}" for r, c in per_root)
    print(f"  omega({n}) = {omega} == {parts}")
    assert omega == decomposed

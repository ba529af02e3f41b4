#!/usr/bin/env python3
"""Moment sums of f(n)/phi(f(n)) for f(n) = n^2 + 1 and the bound chain.

Computes S_s exactly and in floating point, fits the two constants the
multiplicative upper bound needs (the ratio constant c and the
divisibility constant K), and shows the bound dominating every moment.
"""

import math

import totient_moments as tm

table = tm.sieve_primes(10**6)
poly = tm.PolynomialSpec((1, 0, 1))  # n^2 + 1
x = 10**4
seq = tm.poly_int_sequence(poly, x)
print(f"sequence: {seq.label}, N = {seq.count}, values <= M = {seq.bound:.3g}")

report = tm.moment_report(seq, tuple(range(1, 7)), table)
for s, total, norm in zip(report.s_values, report.sums_float, report.normalized):
    print(f"  S_{s} = {total:14.2f}   S_{s}/N = {norm:10.4f}")
print(f"fitted growth constant C = {report.growth_constant:.4f} "
      f"(least C with S_s/N <= exp(s loglog(s+2) + C s))")

# The bound chain: with alpha = 1/2 the smoothness cut is
# y = max((ln M)^alpha, 2), and the weight g(n) = sqrt(n) reflects the
# sublinear root-count bound for a degree-2 polynomial.
alpha = 0.5
y = max(math.log(seq.bound) ** alpha, 2.0)
g = tm.MultiplicativeSpec.power_root(2)
dset = tm.enumerate_smooth(y, table)
print(f"\nalpha = {alpha}, y = {y:.3f}, smooth set {dset.members}")

omega_fit = tm.fit_divisibility_bound(seq, g, dset)
print(f"K = max omega(n) g(n) = {omega_fit.constant:.1f} at n = {omega_fit.witness} "
      f"(gamma = K/N = {omega_fit.gamma:.3f})")

ratio_fit = tm.fit_ratio_constant(int(seq.bound), alpha, table)
print(f"c = {ratio_fit.constant:.4f} fitted over [2, {int(seq.bound):.2e}] "
      f"(witness n = {ratio_fit.witness})")

print("\nmoment vs bound K (c/alpha)^s prod_(p<=y)(1 + ((1+1/p)^s - 1)/g(p)):")
for s in range(1, 7):
    bound = tm.moment_upper_bound(omega_fit.constant, ratio_fit.constant / alpha,
                                  s, y, g, table)
    total = report.sums_float[s - 1]
    print(f"  s={s}: {total:14.2f} <= {bound:16.2f}   (slack x{bound/total:8.1f})")
    assert total <= bound

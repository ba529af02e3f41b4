#!/usr/bin/env python3
"""Root counting for polynomial congruences and the bounds it obeys.

rho(f, m) counts solutions of f(x) = 0 (mod m). It is multiplicative over
coprime moduli (CRT), bounded by min(p, d) at primes, and sublinear in m:
rho(f, m) <= const * d * m^(1 - 1/d). The library brute-forces, composes,
and cross-checks all three facts.
"""

import totient_moments as tm

table = tm.sieve_primes(10**5)
poly = tm.PolynomialSpec((1, 0, 1))  # x^2 + 1

print("rho(x^2+1, m) for small m, brute force vs CRT composition:")
for m in (1, 2, 5, 10, 13, 15, 65, 100, 325):
    brute = tm.count_roots(poly, m)
    crt = tm.count_roots_crt(poly, tm.factorize(m, table))
    marker = "" if brute.count == crt.count else "  MISMATCH"
    print(f"  m={m:4d}: {brute.count} vs {crt.count}  roots={brute.roots}{marker}")

print("\nLagrange bound rho(f, p) <= min(p, d) at the first primes:")
for p in (2, 3, 5, 13, 17, 97):
    rho, cap = tm.lagrange_bound(poly, p)
    print(f"  p={p:3d}: rho={rho} <= {cap}")

# The sublinear bound: the maximum of rho(f, m)/(d m^(1-1/d)) over a scan
# range stands in for the absolute constant (never asserted, only fitted).
for coeffs in ((1, 0, 1), (-1, 0, 1), (1, 1, 0, 1)):
    spec = tm.PolynomialSpec(coeffs)
    ratio, witness = tm.max_root_ratio(spec, 10**4, table)
    print(f"\n{spec.label()}: max rho/(d m^(1-1/d)) = {ratio:.4f} at m = {witness}")
    rc = tm.count_roots(spec, witness)
    print(f"  witness check: rho({witness}) = {rc.count}")

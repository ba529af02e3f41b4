#!/usr/bin/env python3
"""Totient ratios over products of linear forms.

For shifts b_1..b_k and slope a, each admissible integer b contributes
a^(k+1) |(b-b_1)...(b-b_k)|, the discriminant-like product that sieve
weights sum over. Moments of its totient ratio grow like
(c log max(k, s))^s * eta * log x with a stable constant.
"""

import math

import totient_moments as tm

table = tm.sieve_primes(10**4)

for logx in (20, 40):
    x = math.exp(logx)
    spec = tm.LinearDeltaSpec(a=1, shifts=(0, 2, 6), x=x, eta=1.0)
    seq = tm.linear_delta_sequence(spec)
    print(f"x = e^{logx}: {seq.count} admissible shifts, values <= {seq.bound:.0f}")

    # omega(n) <= 3 eta log(x) / g(n) with g(p) = p/min(p, k).
    g = tm.MultiplicativeSpec.linear_min(spec.k)
    dset = tm.enumerate_smooth(5, table)
    cap = 3 * spec.eta * logx
    for n in dset.members:
        omega = tm.divisible_count(seq, n)
        gval = float(g.at_squarefree(dset.factor(n)))
        assert omega * gval <= 1.5 * cap
    fit = tm.fit_divisibility_bound(seq, g, dset)
    print(f"  max omega(n) g(n) = {fit.constant:.1f} (cap with slack: {1.5*cap:.0f})")

    ratios = tm.totient_ratios(seq, table)
    worst = 0.0
    for s in range(1, 7):
        total = tm.moment_sum(seq, s, table, exact=False, ratios=ratios)[1]
        c_fit = (total / (spec.eta * logx)) ** (1.0 / s) / math.log(max(spec.k, s))
        worst = max(worst, c_fit)
        print(f"  s={s}: S_s = {total:11.1f}  ->  c_fit = {c_fit:.3f}")
    print(f"  moment constant at this scale: {worst:.3f}")

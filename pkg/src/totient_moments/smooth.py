"""Squarefree smooth sets and exact Euler-product machinery.

The central object is the finite set of squarefree integers whose prime
divisors all lie in (1, y]; its 2^pi(y) members are the support of the
multiplicative weight

    w_s(n) = prod_{p | n} ((1 + 1/p)^s - 1),

the coefficient that appears when a sum of s-fold products of squarefree
divisors is regrouped by the lcm of the tuple. Everything here that can
be rational is computed in exact rationals; floating point appears only
for irrational weights (the d-th-root family) and in summary reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .arith import Factorization, PrimeTable
from .errors import BoundsError, CapacityError, DivergenceError, DomainError

__all__ = [
    "SmoothSet",
    "MultiplicativeSpec",
    "enumerate_smooth",
    "lcm_tuple_weight_at_prime",
    "lcm_tuple_weight",
    "euler_product_bound",
    "smooth_divisor_sum",
    "inverse_weight_prime_sum",
    "prime_harmonic_sum",
    "SMOOTH_PRIME_CAP",
]

# 2^pi(y) subset products; beyond 25 generating primes the enumeration
# would pass ~3.3e7 members and is refused.
SMOOTH_PRIME_CAP = 25

# Primes below 101: the largest smoothness bound the cap admits. Members
# of any admissible smooth set factor completely over this list.
_SMALL_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
    53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)

_MAX_TUPLE_POWER = 64


@dataclass(frozen=True)
class SmoothSet:
    """All squarefree integers with every prime divisor in (1, y].

    ``members`` is ascending and always starts with 1 (the empty
    product); its length is exactly 2^len(primes).
    """

    y: float
    primes: tuple[int, ...]
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, n: int) -> bool:
        i = _bisect(self.members, n)
        return i >= 0

    def factor(self, n: int) -> tuple[int, ...]:
        """Distinct primes of a member, recovered by dividing the
        generating primes back out."""
        if n == 1:
            return ()
        ps = []
        m = n
        for p in self.primes:
            if m % p == 0:
                ps.append(p)
                m //= p
        if m != 1:
            raise DomainError(f"{n} is not a member of the smooth set (y={self.y})")
        return tuple(ps)


def _bisect(seq, x) -> int:
    lo, hi = 0, len(seq)
    while lo < hi:
        mid = (lo + hi) // 2
        if seq[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo < len(seq) and seq[lo] == x else -1


def enumerate_smooth(y: float, table: PrimeTable) -> SmoothSet:
    """Enumerate the squarefree y-smooth set as sorted subset products.

    Deterministic: products are generated in bitmask order and sorted.
    Refuses pi(y) > SMOOTH_PRIME_CAP.
    """
    if y < 2:
        raise DomainError(f"smoothness bound y must be >= 2, got {y}")
    if y > table.limit:
        raise BoundsError(f"y={y} exceeds the sieve limit {table.limit}")
    ps = [int(p) for p in table.primes_up_to(y)]
    if len(ps) > SMOOTH_PRIME_CAP:
        raise CapacityError(
            f"pi(y) = {len(ps)} exceeds the cap of {SMOOTH_PRIME_CAP} generating "
            f"primes (2^pi(y) members)"
        )
    members = [1]
    for p in ps:
        members.extend([m * p for m in members])
    members.sort()
    return SmoothSet(y=float(y), primes=tuple(ps), members=tuple(members))


def lcm_tuple_weight_at_prime(p: int, s: int) -> Fraction:
    """(1 + 1/p)^s - 1, exactly.

    Equals sum_{k=1..s} C(s,k) p^-k: the weight a single prime receives
    from all s-tuples of squarefree divisors whose lcm it must divide.
    """
    if not 1 <= s <= _MAX_TUPLE_POWER:
        raise DomainError(f"tuple power s must be in [1, {_MAX_TUPLE_POWER}], got {s}")
    ps = p**s
    return Fraction((p + 1) ** s - ps, ps)


def _squarefree_small_primes(n: int) -> tuple[int, ...]:
    if n < 1:
        raise DomainError(f"expected a positive integer, got {n}")
    m = n
    ps = []
    for p in _SMALL_PRIMES:
        if m % p == 0:
            m //= p
            if m % p == 0:
                raise DomainError(f"{n} is not squarefree ({p}^2 divides it)")
            ps.append(p)
    if m != 1:
        raise DomainError(f"{n} is not smooth over primes <= {_SMALL_PRIMES[-1]}")
    return tuple(ps)


def lcm_tuple_weight(n: int, s: int) -> Fraction:
    """The multiplicative weight prod_{p|n} ((1+1/p)^s - 1) of a member.

    Agrees with the direct sum over all s-tuples (d_1, ..., d_s) of
    squarefree divisors with lcm(d_1, ..., d_s) = n of prod 1/d_i; the
    tests check that agreement by brute-force tuple enumeration.
    """
    result = Fraction(1)
    for p in _squarefree_small_primes(n):
        result *= lcm_tuple_weight_at_prime(p, s)
    return result


@dataclass(frozen=True)
class MultiplicativeSpec:
    """A multiplicative weight g given by its values on prime powers.

    Kinds:
        unit               g == 1 on every prime power
        power-root(d)      g(p^e) = p^(e/d)   (floating, g(n) = n^(1/d))
        linear-min(k)      g(p) = p/min(p, k),   g(p^e) = 1 for e >= 2
        shifted-min(d)     g(p) = (p-1)/min(p, d), g(p^e) = 1 for e >= 2
        custom-table       explicit (prime, exponent) -> positive Fraction

    Values are strictly positive; the three named families and the unit
    weight are rational except power-root, which is evaluated in floating
    point via exp(log(n)/d).
    """

    kind: str
    param: int | None = None
    table: Mapping[tuple[int, int], Fraction] | None = None

    @classmethod
    def unit(cls) -> "MultiplicativeSpec":
        return cls("unit")

    @classmethod
    def power_root(cls, d: int) -> "MultiplicativeSpec":
        if d < 1:
            raise DomainError("power-root parameter d must be a positive integer")
        return cls("power-root", d)

    @classmethod
    def linear_min(cls, k: int) -> "MultiplicativeSpec":
        if k < 1:
            raise DomainError("linear-min parameter k must be a positive integer")
        return cls("linear-min", k)

    @classmethod
    def shifted_min(cls, d: int) -> "MultiplicativeSpec":
        if d < 1:
            raise DomainError("shifted-min parameter d must be a positive integer")
        return cls("shifted-min", d)

    @classmethod
    def custom(cls, table: Mapping[tuple[int, int], Fraction]) -> "MultiplicativeSpec":
        vals = {k: Fraction(v) for k, v in table.items()}
        if any(v <= 0 for v in vals.values()):
            raise DomainError("custom multiplicative values must be strictly positive")
        return cls("custom-table", None, vals)

    @property
    def rational(self) -> bool:
        return self.kind != "power-root"

    def label(self) -> str:
        if self.kind in ("unit", "custom-table"):
            return self.kind
        return f"{self.kind}({self.param})"

    def at_prime(self, p: int):
        """g(p) as a Fraction (rational kinds) or float (power-root)."""
        if self.kind == "unit":
            return Fraction(1)
        if self.kind == "power-root":
            return math.exp(math.log(p) / self.param)
        if self.kind == "linear-min":
            return Fraction(p, min(p, self.param))
        if self.kind == "shifted-min":
            return Fraction(p - 1, min(p, self.param))
        value = self.table.get((p, 1))
        if value is None:
            raise DomainError(f"custom table has no value at prime {p}")
        return value

    def at_prime_power(self, p: int, e: int):
        if e == 1:
            return self.at_prime(p)
        if self.kind == "unit":
            return Fraction(1)
        if self.kind == "power-root":
            return math.exp(e * math.log(p) / self.param)
        if self.kind in ("linear-min", "shifted-min"):
            return Fraction(1)
        value = self.table.get((p, e))
        if value is None:
            raise DomainError(f"custom table has no value at {p}^{e}")
        return value

    def at_squarefree(self, primes: tuple[int, ...]):
        """g at a squarefree number given its distinct primes.

        power-root follows the documented convention exp(log(n)/d), so
        comparisons against it carry a ~1-ulp floating tolerance.
        """
        if self.kind == "power-root":
            n = math.prod(primes)
            return math.exp(math.log(n) / self.param) if n > 1 else 1.0
        result = Fraction(1)
        for p in primes:
            result *= self.at_prime(p)
        return result

    def at(self, f: Factorization):
        """g(n) over a full factorization."""
        if self.kind == "power-root":
            if f.value == 1:
                return 1.0
            return math.exp(math.log(f.value) / self.param)
        result = Fraction(1)
        for p, e in f.factors:
            result *= self.at_prime_power(p, e)
        return result


def euler_product_bound(
    y: float, s: int, g: MultiplicativeSpec, table: PrimeTable
) -> Fraction | float:
    """prod_{p <= y} (1 + ((1+1/p)^s - 1)/g(p)).

    Exact rational when g is rational-valued, floating otherwise. This is
    the product factor of the moment upper bound; the full bound applies
    the leading K (c/alpha)^s scalars on top.
    """
    primes = table.primes_up_to(y) if y >= 2 else np.empty(0, np.int64)
    if g.rational:
        result = Fraction(1)
        for p in primes:
            p = int(p)
            gp = g.at_prime(p)
            if gp <= 0:
                raise DomainError(f"g({p}) = {gp} must be positive")
            result *= 1 + lcm_tuple_weight_at_prime(p, s) / gp
        return result
    result = 1.0
    for p in primes:
        p = int(p)
        gp = g.at_prime(p)
        if gp <= 0:
            raise DomainError(f"g({p}) = {gp} must be positive")
        result *= 1.0 + float(lcm_tuple_weight_at_prime(p, s)) / gp
    return result


def smooth_divisor_sum(f: Factorization, y: float) -> tuple[Fraction, Fraction]:
    """Both sides of prod_{p|n, p<=y}(1 + 1/p) = sum_{d|n squarefree,
    y-smooth} 1/d, computed independently.

    The left side multiplies per-prime factors; the right side actually
    enumerates the 2^r squarefree smooth divisors. Callers assert the
    exact equality.
    """
    small = [p for p, _ in f.factors if p <= y]
    prod_side = Fraction(1)
    for p in small:
        prod_side *= Fraction(p + 1, p)
    base = math.prod(small)
    total = 0
    for bits in range(1 << len(small)):
        d = 1
        m = bits
        i = 0
        while m:
            if m & 1:
                d *= small[i]
            m >>= 1
            i += 1
        total += base // d
    sum_side = Fraction(total, base)
    return prod_side, sum_side


def _tail_bound(g: MultiplicativeSpec, truncation: int, table: PrimeTable) -> float:
    """Rigorous overestimate of sum_{p > truncation} 1/(p g(p))."""
    if g.kind == "power-root":
        d = g.param
        # sum_{n > P} n^(-1-1/d) <= integral_P^inf x^(-1-1/d) dx = d P^(-1/d)
        return d * truncation ** (-1.0 / d)
    k = g.param
    cut = max(truncation, k)
    exact = 0.0
    if cut > truncation:
        if cut > table.limit:
            raise BoundsError(
                f"tail bound needs primes up to {cut}, table stops at {table.limit}"
            )
        ps = table.primes_up_to(cut)
        ps = ps[ps > truncation]
        exact = math.fsum(1.0 / (p * float(g.at_prime(int(p)))) for p in ps)
    if g.kind == "linear-min":
        # term = k/p^2 beyond the cut; sum_{n > Q} n^-2 <= 1/Q
        return exact + k / cut
    # shifted-min: term = d/(p(p-1)); sum_{n > Q} 1/(n(n-1)) = 1/Q exactly
    return exact + k / cut


def inverse_weight_prime_sum(
    g: MultiplicativeSpec, truncation: int, table: PrimeTable, c0: float | None = None
) -> tuple[float, float]:
    """Partial sum and tail bound of sum_p 1/(p g(p)).

    Returns (partial, tail_bound) with partial = sum_{p <= truncation}
    and tail_bound a rigorous overestimate of the remainder derived from
    g's decay. Raises DivergenceError when p*g(p) stays bounded (the
    series then diverges with the primes' harmonic sum), and DomainError
    for custom tables, whose tail decay is unknown.
    """
    if truncation < 2:
        raise DomainError("truncation must be >= 2")
    if g.kind == "unit":
        raise DivergenceError("sum 1/(p g(p)) diverges for the unit weight")
    if g.kind == "custom-table":
        raise DomainError("no generic tail bound for custom-table weights")
    if g.kind == "linear-min" and g.param < 1:
        raise DivergenceError("linear-min requires k >= 1")
    if c0 is not None:
        inf_g = _infimum_at_primes(g)
        if inf_g < c0 - 1e-15:
            raise DomainError(
                f"g(p) >= c0 fails: inf g(p) = {inf_g} < c0 = {c0}"
            )
    ps = table.primes_up_to(truncation)
    partial = math.fsum(1.0 / (int(p) * float(g.at_prime(int(p)))) for p in ps)
    return partial, _tail_bound(g, truncation, table)


def _infimum_at_primes(g: MultiplicativeSpec) -> float:
    if g.kind == "power-root":
        return 2.0 ** (1.0 / g.param)  # increasing in p
    if g.kind == "linear-min":
        return 1.0 if g.param >= 2 else 2.0  # p/min(p,k): 1 once p <= k exists
    # shifted-min: (p-1)/min(p,d) is minimized among the first primes
    candidates = [p for p in _SMALL_PRIMES if p <= g.param + 2] or [2]
    return min(float(g.at_prime(p)) for p in candidates)


def prime_harmonic_sum(s: float, table: PrimeTable) -> float:
    """sum_{p <= s} 1/p in compensated floating point.

    Finite and exact as a sum; Mertens' theorem says it tracks
    loglog(s) + 0.2615... but nothing here relies on that.
    """
    if s > table.limit:
        raise BoundsError(f"s = {s} exceeds the sieve limit {table.limit}")
    return math.fsum(1.0 / int(p) for p in table.primes_up_to(s))

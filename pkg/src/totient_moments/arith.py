"""Exact integer arithmetic substrate.

Prime sieving, single-value and bulk factorization, and the classical
arithmetic functions built on top of a factorization: Euler's phi, the
Moebius function, and the totient ratio n/phi(n) as an exact rational.

All values are confined to positive 63-bit integers so that hot loops can
run on int64 arrays; factorization above the sieve limit falls back to
trial division, a deterministic Miller-Rabin test, and Brent's cycle
method with fixed start parameters (no randomness anywhere).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import BoundsError, CapacityError, DomainError, InvariantViolation

__all__ = [
    "PrimeTable",
    "Factorization",
    "sieve_primes",
    "factorize",
    "euler_phi",
    "mobius",
    "totient_ratio",
    "is_prime",
    "totient_ratio_parts",
    "phi_sieve",
    "VALUE_MAX",
    "SIEVE_LIMIT_MAX",
]

SIEVE_LIMIT_MAX = 10**8
VALUE_MAX = 2**63 - 1

# Deterministic Miller-Rabin witnesses: exact for every n < 3.3e24, which
# comfortably covers the 63-bit value range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SIEVE_CHUNK = 1 << 22
_BULK_CHUNK = 1 << 16
_COMPACT_EVERY = 256


@dataclass(frozen=True)
class PrimeTable:
    """Primes and smallest-prime-factor map up to ``limit``.

    ``spf[n]`` is the smallest prime factor of n for 2 <= n <= limit, with
    the conventions spf[0] = 0, spf[1] = 1 and spf[p] = p at primes.
    Instances are immutable and safe to share across threads.
    """

    limit: int
    primes: np.ndarray  # int64, strictly increasing
    spf: np.ndarray  # uint32

    def primes_up_to(self, bound: float) -> np.ndarray:
        """Primes <= bound as an int64 view (bound may exceed limit only
        if no prime would be missed, so we refuse bound > limit)."""
        if bound > self.limit:
            raise BoundsError(
                f"primes up to {bound} requested from a table sieved to {self.limit}"
            )
        hi = int(np.searchsorted(self.primes, int(bound), side="right"))
        return self.primes[:hi]

    def prime_count(self, bound: float) -> int:
        """pi(bound) for bound <= limit."""
        return int(self.primes_up_to(bound).size)


@dataclass(frozen=True)
class Factorization:
    """A positive 63-bit integer with its full prime-power decomposition.

    ``factors`` is a tuple of (prime, exponent >= 1) pairs with strictly
    increasing primes; it is empty exactly for value 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def distinct_primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def sieve_primes(limit: int) -> PrimeTable:
    """Sieve all primes and smallest prime factors up to ``limit``.

    Parameters
    ----------
    limit : int
        Inclusive upper bound, 2 <= limit <= 10**8.

    Returns
    -------
    PrimeTable
    """
    if not 2 <= limit <= SIEVE_LIMIT_MAX:
        raise BoundsError(f"sieve limit must be in [2, {SIEVE_LIMIT_MAX}], got {limit}")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, math.isqrt(limit) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    # Entries still unmarked at index >= 2 are prime; close the map so
    # that spf[p] = p there. Chunked to avoid a second full-size arange.
    blocks = []
    for lo in range(2, limit + 1, _SIEVE_CHUNK):
        hi = min(lo + _SIEVE_CHUNK, limit + 1)
        idx = np.flatnonzero(spf[lo:hi] == 0).astype(np.int64) + lo
        spf[idx] = idx.astype(np.uint32)
        blocks.append(idx)
    spf[1] = 1
    primes = np.concatenate(blocks) if blocks else np.empty(0, np.int64)
    return PrimeTable(limit=limit, primes=primes, spf=spf)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 2**64."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = ((d & -d).bit_length()) - 1
    d >>= s
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _icbrt(n: int) -> int:
    r = round(n ** (1.0 / 3.0))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def _brent_rho(n: int) -> int:
    """Nontrivial factor of an odd composite n by Brent's cycle method.

    Start values are fixed (y0 = 2, polynomial offsets c = 1, 2, ...) so
    the factor found, and hence every downstream report, is reproducible.
    """
    for c in range(1, 1000):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            y = ys
            while g == 1:
                y = (y * y + c) % n
                g = math.gcd(abs(x - y), n)
        if g != n:
            return g
    raise InvariantViolation(f"rho splitting failed for {n}")  # pragma: no cover


def _factor_generic(n: int, out: dict[int, int]) -> None:
    """Accumulate the factorization of n (no small factors assumed)."""
    stack = [n]
    while stack:
        v = stack.pop()
        if v == 1:
            continue
        if is_prime(v):
            out[v] = out.get(v, 0) + 1
            continue
        r = math.isqrt(v)
        if r * r == v:
            stack.append(r)
            stack.append(r)
            continue
        d = _brent_rho(v)
        stack.append(d)
        stack.append(v // d)


def factorize(n: int, table: PrimeTable) -> Factorization:
    """Full prime-power decomposition of a positive 63-bit integer.

    Values within the sieve limit walk the spf map; larger values are
    trial-divided by sieved primes up to min(limit, cbrt(n)) and the
    cofactor is resolved with the deterministic primality test plus rho
    splitting. Deterministic across runs.
    """
    if n < 1:
        raise DomainError(f"factorize requires a positive integer, got {n}")
    if n > VALUE_MAX:
        raise CapacityError(f"value {n} exceeds the 63-bit range")
    if n == 1:
        return Factorization(1, ())
    if n <= table.limit:
        spf = table.spf
        m = n
        factors = []
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        return Factorization(n, tuple(factors))
    out: dict[int, int] = {}
    m = n
    bound = min(table.limit, _icbrt(n) + 1)
    for p in table.primes:
        p = int(p)
        if p > bound or p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        _factor_generic(m, out)
    return Factorization(n, tuple(sorted(out.items())))


def euler_phi(f: Factorization) -> int:
    """phi(n) = prod p^(e-1) (p-1); phi(1) = 1 by the empty product."""
    result = 1
    for p, e in f.factors:
        result *= p ** (e - 1) * (p - 1)
    return result


def mobius(f: Factorization) -> int:
    """mu(n): 0 if any square divides n, else (-1)^(number of primes)."""
    if any(e >= 2 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def totient_ratio(f: Factorization) -> Fraction:
    """n/phi(n) as an exact rational in lowest terms.

    Depends only on the distinct primes of n: equals prod p/(p-1).
    """
    num = 1
    den = 1
    for p, _ in f.factors:
        num *= p
        den *= p - 1
    return Fraction(num, den)


def phi_sieve(limit: int) -> np.ndarray:
    """phi(n) for all 0 <= n <= limit via an in-place multiplicative sieve.

    Independent of factorize(); used as a bulk oracle and fast path.
    """
    if not 1 <= limit <= SIEVE_LIMIT_MAX:
        raise BoundsError(f"phi sieve limit must be in [1, {SIEVE_LIMIT_MAX}]")
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in range(2, limit + 1):
        if phi[p] == p:  # untouched, hence prime
            phi[p::p] -= phi[p::p] // p
    return phi


def _ratio_parts_chunk(vals: np.ndarray, table: PrimeTable):
    """(rad(v), phi(rad(v))) for one chunk of positive int64 values."""
    rem = vals.copy()
    num = np.ones(vals.size, np.int64)
    den = np.ones(vals.size, np.int64)
    maxv = int(rem.max())
    if maxv == 1:
        return num, den
    bound = min(table.limit, math.isqrt(maxv))
    primes = table.primes_up_to(bound)
    active = np.flatnonzero(rem > 1)
    pos = 0
    while pos < primes.size and active.size:
        block = primes[pos : pos + _COMPACT_EVERY]
        p0 = int(block[0])
        # A surviving cofactor below p0^2 has no factor >= p0 besides
        # itself, so it is prime: finalize and drop it from the scan.
        r = rem[active]
        done = r < p0 * p0
        if done.any():
            fin = active[done & (r > 1)]
            if fin.size:
                num[fin] *= rem[fin]
                den[fin] *= rem[fin] - 1
                rem[fin] = 1
            active = active[~done]
            if not active.size:
                break
        for p in block:
            p = int(p)
            hit = active[rem[active] % p == 0]
            if hit.size:
                num[hit] *= p
                den[hit] *= p - 1
                rem[hit] //= p
                more = hit[rem[hit] % p == 0]
                while more.size:  # strip higher powers; ratio ignores them
                    rem[more] //= p
                    more = more[rem[more] % p == 0]
        pos += len(block)
    left = np.flatnonzero(rem > 1)
    if left.size:
        if bound >= math.isqrt(int(rem[left].max())):
            # No factor <= sqrt: every leftover cofactor is prime.
            num[left] *= rem[left]
            den[left] *= rem[left] - 1
        else:
            for i in left:
                sub: dict[int, int] = {}
                _factor_generic(int(rem[i]), sub)
                for p in sorted(sub):
                    num[i] *= p
                    den[i] *= p - 1
    return num, den


def totient_ratio_parts(
    values: Sequence[int] | np.ndarray, table: PrimeTable, threads: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Bulk numerators and denominators of v/phi(v) for an int64 array.

    Returns (num, den) with num/den == v/phi(v); both entries are
    divisors of v, so everything stays inside int64. Work is split over
    fixed 2^16-element chunks and merged in index order, so the result
    is identical for every thread count.
    """
    vals = np.ascontiguousarray(values, dtype=np.int64)
    if vals.size == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    if int(vals.min()) < 1:
        raise DomainError("totient ratios are defined for positive integers only")
    spans = [(lo, min(lo + _BULK_CHUNK, vals.size)) for lo in range(0, vals.size, _BULK_CHUNK)]
    if threads <= 1 or len(spans) == 1:
        parts = [_ratio_parts_chunk(vals[lo:hi], table) for lo, hi in spans]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda s: _ratio_parts_chunk(vals[s[0] : s[1]], table), spans))
    num = np.concatenate([p[0] for p in parts])
    den = np.concatenate([p[1] for p in parts])
    return num, den

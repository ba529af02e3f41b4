"""Root counting for polynomial congruences f(x) = 0 (mod m).

Brute-force counts scan every residue with modular Horner evaluation
(int64-safe for the scan budget); composite moduli may also be composed
from prime-power counts via the Chinese remainder theorem, and both
routes are kept so they can check each other. On top sit the classical
per-prime bound rho(f, p) <= min(p, d) and the empirical sublinear ratio
rho(f, m) / (d m^(1 - 1/d)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import Factorization, PrimeTable
from .errors import CapacityError, DomainError, InvariantViolation
from .sequences import PolynomialSpec

__all__ = [
    "RootCount",
    "count_roots",
    "count_roots_crt",
    "lagrange_bound",
    "max_root_ratio",
    "root_counts_for_moduli",
    "ROOT_SCAN_LIMIT",
    "ROOT_RETAIN_LIMIT",
    "RATIO_SCAN_LIMIT",
]

ROOT_SCAN_LIMIT = 10**7  # largest modulus a single brute-force scan accepts
ROOT_RETAIN_LIMIT = 10**4  # residue lists kept only below this modulus
RATIO_SCAN_LIMIT = 10**5

_SCAN_CHUNK = 1 << 20
_BATCH_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class RootCount:
    modulus: int
    count: int
    roots: tuple[int, ...] | None  # retained for modulus <= ROOT_RETAIN_LIMIT


def _horner_mod(coeffs: tuple[int, ...], xs: np.ndarray, m: int) -> np.ndarray:
    # Canonical residues first: numpy % with a positive modulus is
    # nonnegative even for negative coefficients.
    acc = np.full(xs.shape, coeffs[-1] % m, dtype=np.int64)
    for c in reversed(coeffs[:-1]):
        acc = (acc * xs + c % m) % m
    return acc


def count_roots(spec: PolynomialSpec, m: int) -> RootCount:
    """Exact rho(f, m) by scanning all residues 0..m-1."""
    if m < 1:
        raise DomainError("modulus must be a positive integer")
    if m > ROOT_SCAN_LIMIT:
        raise CapacityError(
            f"modulus {m} exceeds the brute-force scan budget {ROOT_SCAN_LIMIT}"
        )
    count = 0
    roots: list[int] | None = [] if m <= ROOT_RETAIN_LIMIT else None
    for lo in range(0, m, _SCAN_CHUNK):
        xs = np.arange(lo, min(lo + _SCAN_CHUNK, m), dtype=np.int64)
        hit = _horner_mod(spec.coefficients, xs, m) == 0
        count += int(hit.sum())
        if roots is not None:
            roots.extend(int(r) for r in xs[hit])
    return RootCount(m, count, tuple(roots) if roots is not None else None)


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t


def count_roots_crt(spec: PolynomialSpec, fact: Factorization) -> RootCount:
    """rho(f, m) composed multiplicatively from prime-power counts.

    Each prime-power component is brute-forced; the total is the product
    (CRT pairs residues across coprime components). Must agree with the
    direct scan, which the test suite checks exhaustively.
    """
    m = fact.value
    parts = [count_roots(spec, p**e) for p, e in fact.factors]
    count = math.prod(part.count for part in parts) if parts else 1
    roots: tuple[int, ...] | None = None
    if m <= ROOT_RETAIN_LIMIT:
        residues = [0]
        modulus = 1
        for part in parts:
            residues = [
                _crt_pair(r, modulus, int(r2), part.modulus)
                for r in residues
                for r2 in part.roots or ()
            ]
            modulus *= part.modulus
        roots = tuple(sorted(residues)) if count else ()
    return RootCount(m, count, roots)


def lagrange_bound(spec: PolynomialSpec, p: int) -> tuple[int, int]:
    """(rho(f, p), min(p, d)) with the bound asserted.

    A violation cannot be a counterexample (the bound is a theorem for
    content-1 polynomials); it would signal an arithmetic bug.
    """
    rho = count_roots(spec, p).count
    cap = min(p, spec.degree)
    if rho > cap:
        raise InvariantViolation(
            f"root count {rho} exceeds min(p, d) = {cap} at p = {p}: "
            f"arithmetic bug in the residue scan"
        )
    return rho, cap


def _root_counts_batched(spec: PolynomialSpec, moduli: np.ndarray) -> np.ndarray:
    """rho(f, m) for many moduli in one set of vectorized passes."""
    counts = np.empty(moduli.size, dtype=np.int64)
    pos = 0
    while pos < moduli.size:
        hi = pos
        total = 0
        while hi < moduli.size and total + int(moduli[hi]) <= _BATCH_ELEMENTS:
            total += int(moduli[hi])
            hi += 1
        hi = max(hi, pos + 1)
        ms = moduli[pos:hi].astype(np.int64)
        sizes = ms
        ends = np.cumsum(sizes)
        starts = ends - sizes
        n = int(ends[-1])
        mods = np.repeat(ms, sizes)
        xs = np.arange(n, dtype=np.int64) - np.repeat(starts, sizes)
        acc = np.full(n, spec.coefficients[-1], dtype=np.int64) % mods
        for c in reversed(spec.coefficients[:-1]):
            acc = (acc * xs + c % mods) % mods
        zero = (acc == 0).astype(np.int64)
        counts[pos:hi] = np.add.reduceat(zero, starts)
        pos = hi
    return counts


def _root_counts_shared_values(spec: PolynomialSpec, ms: np.ndarray) -> np.ndarray:
    """Brute force via one shared value table: f(x) is evaluated once on
    0..max(m)-1 and each modulus checks divisibility on its own prefix
    (x < m covers every residue class of m exactly once)."""
    top = int(ms.max())
    vals = spec.evaluate_array(np.arange(top, dtype=np.int64))
    counts = np.empty(ms.size, dtype=np.int64)
    for i, m in enumerate(ms.tolist()):
        counts[i] = int((vals[:m] % m == 0).sum())
    return counts


def root_counts_for_moduli(spec: PolynomialSpec, moduli) -> np.ndarray:
    """Brute-force rho(f, m) for an array of moduli (each within budget)."""
    ms = np.ascontiguousarray(moduli, dtype=np.int64)
    if ms.size == 0:
        return np.empty(0, np.int64)
    if int(ms.min()) < 1:
        raise DomainError("moduli must be positive")
    if int(ms.max()) > ROOT_SCAN_LIMIT:
        raise CapacityError(f"modulus exceeds the scan budget {ROOT_SCAN_LIMIT}")
    if spec.tau * int(ms.max()) ** spec.degree <= 2**62:
        return _root_counts_shared_values(spec, ms)
    return _root_counts_batched(spec, ms)


def _prime_power_counts(
    spec: PolynomialSpec, m_max: int, table: PrimeTable
) -> dict[int, int]:
    """rho(f, p^e) for every prime power p^e <= m_max."""
    ps = table.primes_up_to(m_max)
    prime_counts = root_counts_for_moduli(spec, ps)
    out = {int(p): int(c) for p, c in zip(ps, prime_counts)}
    higher = []
    for p in ps:
        p = int(p)
        if p * p > m_max:
            break
        q = p * p
        while q <= m_max:
            higher.append(q)
            q *= p
    higher.sort()
    if higher:
        for q, c in zip(higher, root_counts_for_moduli(spec, np.asarray(higher))):
            out[int(q)] = int(c)
    return out


def composed_root_counts(
    spec: PolynomialSpec, m_max: int, table: PrimeTable
) -> np.ndarray:
    """rho(f, m) for all 1 <= m <= m_max via multiplicative composition.

    counts[0] is unused; counts[1] = 1 (every integer solves mod 1).
    """
    if m_max > table.limit:
        raise CapacityError(f"m_max {m_max} exceeds the sieve limit {table.limit}")
    pp = _prime_power_counts(spec, m_max, table)
    spf = table.spf
    counts = np.zeros(m_max + 1, dtype=np.int64)
    counts[1] = 1
    for m in range(2, m_max + 1):
        p = int(spf[m])
        q = p
        rest = m // p
        while rest % p == 0:
            rest //= p
            q *= p
        counts[m] = pp[q] * counts[rest]
    return counts


def max_root_ratio(
    spec: PolynomialSpec, m_max: int, table: PrimeTable
) -> tuple[float, int]:
    """max over m <= m_max of rho(f, m) / (d m^(1-1/d)) and its witness.

    The empirical stand-in for the absolute constant in the sublinear
    root-count bound; never asserted against a hard-coded constant.
    """
    if m_max > RATIO_SCAN_LIMIT:
        raise CapacityError(f"m_max {m_max} exceeds the ratio scan budget {RATIO_SCAN_LIMIT}")
    counts = composed_root_counts(spec, m_max, table)
    d = spec.degree
    ms = np.arange(1, m_max + 1, dtype=np.float64)
    ratios = counts[1:] / (d * ms ** (1.0 - 1.0 / d))
    best = int(ratios.argmax())
    return float(ratios[best]), best + 1

"""Primes in arithmetic progressions and the Brun-Titchmarsh check.

pi(x; k, a) is counted exactly from the sieve. The checker compares every
coprime residue class against the classical upper bound
(2 + eps) x / (phi(k) log(2x/k)) and against the cruder working form
5x / (phi(k) log x), and reports the worst observed ratio. The congruence
decomposition omega(n) = sum over roots alpha of pi(x; n, alpha) for a
polynomial over primes is verified here as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import PrimeTable, phi_sieve
from .congruence import count_roots
from .errors import BoundsError, DomainError
from .sequences import PolynomialSpec

__all__ = [
    "prime_residue_counts",
    "progression_decomposition",
    "BrunTitchmarshReport",
    "brun_titchmarsh_report",
]


def prime_residue_counts(x: float, modulus: int, table: PrimeTable) -> np.ndarray:
    """counts[a] = pi(x; modulus, a) for every residue a in [0, modulus)."""
    if modulus < 1:
        raise DomainError("modulus must be a positive integer")
    if x > table.limit:
        raise BoundsError(f"x = {x} exceeds the sieve limit {table.limit}")
    ps = table.primes_up_to(x)
    return np.bincount(ps % modulus, minlength=modulus).astype(np.int64)


def progression_decomposition(
    spec: PolynomialSpec, n: int, x: float, table: PrimeTable
) -> tuple[int, int, tuple[tuple[int, int], ...]]:
    """(omega(n), sum over roots, per-root class counts) for f over primes.

    omega(n) counts primes p <= x with n | f(p) directly; the decomposed
    side adds pi(x; n, alpha) over the roots alpha of f mod n. The two
    must agree exactly (every class is counted, coprime or not).
    """
    ps = table.primes_up_to(x)
    vals = spec.evaluate_array(ps.astype(np.int64))
    omega = int((vals % n == 0).sum())
    roots = count_roots(spec, n).roots
    if roots is None:
        raise DomainError(f"modulus {n} too large to retain roots")
    class_counts = prime_residue_counts(x, n, table)
    per_root = tuple((int(r), int(class_counts[r])) for r in roots)
    return omega, sum(c for _, c in per_root), per_root


@dataclass(frozen=True)
class BrunTitchmarshReport:
    x: float
    k_max: int
    epsilon: float
    rows: tuple[dict, ...]
    max_ratio: float
    witness: tuple[int, int]  # (k, a) attaining the max ratio

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "k_max": self.k_max,
            "epsilon": self.epsilon,
            "rows": list(self.rows),
            "max_ratio": self.max_ratio,
            "witness_k": self.witness[0],
            "witness_a": self.witness[1],
        }


def brun_titchmarsh_report(
    x: float, k_max: int, epsilon: float, table: PrimeTable
) -> BrunTitchmarshReport:
    """Compare pi(x; k, a) against both upper-bound forms, all k <= k_max.

    Only residues with (a, k) = 1 enter (a non-coprime class holds at
    most one prime, which the decomposition identity covers separately).
    Reports per-k worst counts and the overall max of
    pi(x; k, a) phi(k) log(2x/k) / ((2 + eps) x).
    """
    if epsilon <= 0:
        raise DomainError("epsilon must be positive")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    if k_max > math.isqrt(int(x)):
        raise DomainError(f"k_max must stay <= sqrt(x) = {math.isqrt(int(x))}")
    if x > table.limit:
        raise BoundsError(f"x = {x} exceeds the sieve limit {table.limit}")
    phis = phi_sieve(k_max)
    logx = math.log(x)
    rows = []
    best = -1.0
    witness = (1, 1)
    for k in range(1, k_max + 1):
        counts = prime_residue_counts(x, k, table)
        phi_k = int(phis[k]) if k > 1 else 1
        classic_cap = (2.0 + epsilon) * x / (phi_k * math.log(2.0 * x / k))
        working_cap = 5.0 * x / (phi_k * logx)
        worst_count = -1
        worst_a = 0
        checked = 0
        for a in range(k) if k > 1 else [1]:
            if math.gcd(a, k) != 1:
                continue  # bound applies to coprime classes only
            checked += 1
            c = int(counts[a % k])
            if c > worst_count:
                worst_count = c
                worst_a = a
        ratio = worst_count / classic_cap * 1.0
        rows.append(
            {
                "k": k,
                "phi_k": phi_k,
                "classes": checked,
                "max_count": worst_count,
                "max_count_a": worst_a,
                "classic_bound": classic_cap,
                "classic_ok": worst_count <= classic_cap,
                "working_bound": working_cap,
                "working_ok": worst_count <= working_cap,
                "ratio": ratio,
            }
        )
        if ratio > best:
            best = ratio
            witness = (k, worst_a)
    return BrunTitchmarshReport(
        x=float(x),
        k_max=k_max,
        epsilon=float(epsilon),
        rows=tuple(rows),
        max_ratio=best,
        witness=witness,
    )

"""The three sequence families whose totient ratios are studied.

poly-int      f(1), f(2), ..., f(floor(x)) for an integer polynomial f
poly-prime    f(p) over primes p <= x
linear-delta  a^(k+1) |(b - b_1) ... (b - b_k)| over admissible shifts b

Every generator validates its hypotheses eagerly over the actual range
(positivity, distinctness, overflow) and declares an upper bound M on the
values it emits. The divisibility counter omega(d) = #{n : d | a_n} and
its fitted bound K/g(n) over a smooth set live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import PrimeTable, VALUE_MAX
from .errors import BoundsError, CapacityError, DomainError
from .smooth import MultiplicativeSpec, SmoothSet

__all__ = [
    "PolynomialSpec",
    "LinearDeltaSpec",
    "SequenceInstance",
    "poly_int_sequence",
    "poly_prime_sequence",
    "linear_delta_sequence",
    "divisible_count",
    "OmegaFit",
    "fit_divisibility_bound",
]


@dataclass(frozen=True)
class PolynomialSpec:
    """Integer polynomial b_0 + b_1 n + ... + b_d n^d.

    Hypotheses enforced at construction: degree d >= 1, positive leading
    coefficient, and content gcd(b_d, ..., b_0) = 1. Positivity on the
    actual evaluation range is checked by the sequence generators.
    """

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) < 2:
            raise DomainError("polynomial degree must be at least 1")
        if coeffs[-1] <= 0:
            raise DomainError(
                f"leading coefficient must be positive (b_d > 0 hypothesis), got {coeffs[-1]}"
            )
        if math.gcd(*(abs(c) for c in coeffs)) != 1:
            raise DomainError("coefficients must be coprime (content-1 hypothesis)")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def tau(self) -> int:
        """sum |b_i|: a valid constant with f(n) <= tau * n^degree for n >= 1."""
        return sum(abs(c) for c in self.coefficients)

    def evaluate(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def evaluate_array(self, ns: np.ndarray) -> np.ndarray:
        """Horner evaluation on int64 input; caller guarantees that
        tau * max(n)^degree stays below 2^63 so nothing overflows."""
        acc = np.full(ns.shape, self.coefficients[-1], dtype=np.int64)
        for c in reversed(self.coefficients[:-1]):
            acc = acc * ns + c
        return acc

    def label(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mag = "" if abs(c) == 1 else str(abs(c))
                var = "n" if i == 1 else f"n^{i}"
                terms.append(("-" if c < 0 else "") + mag + var)
        return "+".join(reversed(terms)).replace("+-", "-") or "0"


@dataclass(frozen=True)
class LinearDeltaSpec:
    """Tuple of linear forms with common slope a and shifts b_1..b_k.

    The index set runs over integers b with |b| <= eta*log(x) avoiding
    the shifts; each index contributes a^(k+1) |prod (b - b_i)|.
    Hypotheses: a >= 1, k >= 2, distinct shifts with |b_i| <= log x,
    x >= 3 and (log x)^(-9/10) <= eta <= 1.
    """

    a: int
    shifts: tuple[int, ...]
    x: float
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "shifts", tuple(int(b) for b in self.shifts))
        if self.a < 1:
            raise DomainError("slope a must be a positive integer")
        if len(self.shifts) < 2:
            raise DomainError("at least k = 2 shifts are required")
        if len(set(self.shifts)) != len(self.shifts):
            raise DomainError("shifts must be pairwise distinct")
        if self.x < 3:
            raise DomainError("x must be >= 3")
        logx = math.log(self.x)
        if any(abs(b) > logx for b in self.shifts):
            raise DomainError(f"every shift must satisfy |b_i| <= log x = {logx:.4f}")
        lo = logx ** (-0.9)
        if not lo <= self.eta <= 1.0:
            raise DomainError(
                f"eta must lie in [(log x)^(-9/10), 1] = [{lo:.6f}, 1], got {self.eta}"
            )

    @property
    def k(self) -> int:
        return len(self.shifts)

    def index_set(self) -> np.ndarray:
        """Admissible shifts b, ascending."""
        radius = int(math.floor(self.eta * math.log(self.x)))
        bs = [b for b in range(-radius, radius + 1) if b not in set(self.shifts)]
        return np.asarray(bs, dtype=np.int64)


@dataclass(frozen=True)
class SequenceInstance:
    """A generated sequence a_1..a_N with its declared value bound M.

    ``indices`` records what each position ranges over: n for poly-int,
    the prime p for poly-prime, the shift b for linear-delta.
    """

    family: str
    values: np.ndarray  # int64, >= 1
    count: int
    bound: float
    label: str
    indices: np.ndarray

    def __post_init__(self):
        self.values.setflags(write=False)
        self.indices.setflags(write=False)


def _check_poly_capacity(spec: PolynomialSpec, n_max: int) -> None:
    if spec.tau * n_max**spec.degree > VALUE_MAX:
        raise CapacityError(
            f"values may overflow 63 bits: tau*x^d = {spec.tau}*{n_max}^{spec.degree}"
        )


def poly_int_sequence(spec: PolynomialSpec, x: float) -> SequenceInstance:
    """f(1), ..., f(floor(x)); N = floor(x), M = tau * x^degree."""
    if x < 1:
        raise DomainError("x must be >= 1")
    n_max = int(math.floor(x))
    _check_poly_capacity(spec, n_max)
    ns = np.arange(1, n_max + 1, dtype=np.int64)
    vals = spec.evaluate_array(ns)
    low = int(vals.min())
    if low < 1:
        bad = int(ns[int(vals.argmin())])
        raise DomainError(
            f"polynomial must map positive integers to positive integers "
            f"(f: N -> N hypothesis); f({bad}) = {spec.evaluate(bad)}"
        )
    return SequenceInstance(
        family="poly-int",
        values=vals,
        count=n_max,
        bound=spec.tau * float(x) ** spec.degree,
        label=f"poly-int {spec.label()} x={x:g}",
        indices=ns,
    )


def poly_prime_sequence(
    spec: PolynomialSpec, x: float, table: PrimeTable
) -> SequenceInstance:
    """f(p) over primes p <= x in ascending p; N = pi(x)."""
    if x < 2:
        raise DomainError("x must be >= 2")
    if x > table.limit:
        raise BoundsError(f"x = {x} exceeds the sieve limit {table.limit}")
    ps = table.primes_up_to(x).astype(np.int64)
    _check_poly_capacity(spec, int(ps[-1]))
    vals = spec.evaluate_array(ps)
    low = int(vals.min())
    if low < 1:
        bad = int(ps[int(vals.argmin())])
        raise DomainError(
            f"polynomial must be positive at every prime in range "
            f"(f: P -> N hypothesis); f({bad}) = {spec.evaluate(bad)}"
        )
    return SequenceInstance(
        family="poly-prime",
        values=vals,
        count=int(ps.size),
        bound=spec.tau * float(x) ** spec.degree,
        label=f"poly-prime {spec.label()} x={x:g}",
        indices=ps,
    )


def linear_delta_sequence(spec: LinearDeltaSpec) -> SequenceInstance:
    """a^(k+1) |f(b)| for admissible b ascending; M = a^(k+1)(2 log x)^k."""
    logx = math.log(spec.x)
    lead = spec.a ** (spec.k + 1)
    cap = lead * math.ceil(2 * logx) ** spec.k
    if cap > VALUE_MAX:
        raise CapacityError(
            f"values may overflow 63 bits: a^(k+1) (2 log x)^k ~ {cap:.3e}"
        )
    bs = spec.index_set()
    prods = np.ones(bs.size, dtype=np.int64)
    for b_i in spec.shifts:
        prods *= bs - b_i
    vals = lead * np.abs(prods)
    return SequenceInstance(
        family="linear-delta",
        values=vals,
        count=int(bs.size),
        bound=lead * (2 * logx) ** spec.k,
        label=f"linear-delta a={spec.a} shifts={list(spec.shifts)} x={spec.x:g} eta={spec.eta:g}",
        indices=bs,
    )


def divisible_count(seq: SequenceInstance, d: int) -> int:
    """omega(d): how many sequence values are divisible by d."""
    if d < 1:
        raise DomainError("modulus d must be a positive integer")
    return int((seq.values % d == 0).sum())


@dataclass(frozen=True)
class OmegaFit:
    """Least constant K with omega(n) <= K/g(n) across a smooth set."""

    constant: float
    witness: int
    witness_count: int
    gamma: float  # K / N

    def to_dict(self) -> dict:
        return {
            "omega_constant": self.constant,
            "witness": self.witness,
            "witness_count": self.witness_count,
            "omega_gamma": self.gamma,
        }


def fit_divisibility_bound(
    seq: SequenceInstance, g: MultiplicativeSpec, dset: SmoothSet
) -> OmegaFit:
    """Fit K = max_{n in dset} omega(n) g(n), with the arg-max witness.

    gamma = K/N normalizes by the sequence length, the shape the moment
    bound consumes when K scales linearly with N.
    """
    best = -1.0
    witness = 1
    witness_count = seq.count
    for n in dset.members:
        cnt = divisible_count(seq, n)
        val = cnt * float(g.at_squarefree(dset.factor(n)))
        if val > best:
            best = val
            witness = n
            witness_count = cnt
    return OmegaFit(
        constant=best,
        witness=witness,
        witness_count=witness_count,
        gamma=best / seq.count if seq.count else float("nan"),
    )

"""Moment sums, tail counts, bound evaluation, and constant fitting.

S_s = sum (a_n/phi(a_n))^s is computed exactly (rational, deterministic
pairwise reduction tree) for small runs and in compensated floating point
for large ones. Tail counts are exact strict exceedances. The bound side
evaluates K (c/alpha)^s prod_{p<=y}(1 + ((1+1/p)^s - 1)/g(p)) and fits
every constant the bounds leave unspecified:

  * the ratio constant c  -- scan of alpha*(n/phi(n)) / prod_{small p|n}(1+1/p)
  * the growth constant C -- least C with S_s/N <= exp(s loglog(s+2) + C s)
  * the tail pair (c1,c2) -- count(t) <= c1 exp(-exp(c2 t)) N

Fits are empirical summaries of the scanned range, never asserted as
universal constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .arith import PrimeTable, totient_ratio_parts
from .errors import BoundsError, CapacityError, DomainError, InsufficientDataError
from .sequences import SequenceInstance
from .smooth import MultiplicativeSpec, euler_product_bound

__all__ = [
    "moment_sum",
    "tail_count",
    "totient_ratios",
    "moment_upper_bound",
    "RatioFit",
    "fit_ratio_constant",
    "fit_moment_growth",
    "tail_exponent_choice",
    "tail_bound_value",
    "TailFit",
    "fit_tail_decay",
    "MomentReport",
    "TailReport",
    "moment_report",
    "tail_report",
    "EXACT_DEFAULT_LIMIT",
]

EXACT_DEFAULT_LIMIT = 10**4  # exact rational mode is mandatory up to here
_MAX_S = 64
_S_CHOICE_CAP = 2**40
_FIT_SEGMENT = 1 << 22


def totient_ratios(
    seq: SequenceInstance, table: PrimeTable, threads: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Per-term (numerator, denominator) of a_n/phi(a_n), int64 exact."""
    return totient_ratio_parts(seq.values, table, threads=threads)


def _tree_sum(items: list[Fraction]) -> Fraction:
    """Deterministic pairwise reduction; keeps intermediate fractions as
    small as balanced merging allows."""
    if not items:
        return Fraction(0)
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]


def moment_sum(
    seq: SequenceInstance,
    s: int,
    table: PrimeTable,
    exact: bool | None = None,
    ratios: tuple[np.ndarray, np.ndarray] | None = None,
) -> tuple[Fraction | None, float]:
    """S_s = sum (a_n/phi(a_n))^s as (exact rational or None, float).

    The float path sums (num/den)^s with math.fsum in fixed index order.
    ``exact`` defaults to N <= 10^4; for larger runs the rational sum is
    skipped unless forced.
    """
    if not 1 <= s <= _MAX_S:
        raise DomainError(f"moment order s must be in [1, {_MAX_S}]")
    num, den = ratios if ratios is not None else totient_ratios(seq, table)
    flt = math.fsum((n / d) ** s for n, d in zip(num.tolist(), den.tolist()))
    if exact is None:
        exact = seq.count <= EXACT_DEFAULT_LIMIT
    if not exact:
        return None, flt
    fracs = [Fraction(n, d) ** s for n, d in zip(num.tolist(), den.tolist())]
    return _tree_sum(fracs), flt


def tail_count(
    seq: SequenceInstance,
    t: float,
    table: PrimeTable,
    ratios: tuple[np.ndarray, np.ndarray] | None = None,
) -> int:
    """#{n : a_n/phi(a_n) > t}, exact strict comparison.

    Float filtering with a relative margin settles all but near-ties,
    which are re-checked in exact rational arithmetic against t's exact
    binary value.
    """
    if t <= 0:
        raise DomainError("threshold t must be positive")
    num, den = ratios if ratios is not None else totient_ratios(seq, table)
    lhs = num.astype(np.float64)
    rhs = t * den.astype(np.float64)
    sure = lhs > rhs * (1 + 1e-9)
    count = int(sure.sum())
    gray = np.flatnonzero((~sure) & (lhs > rhs * (1 - 1e-9)))
    if gray.size:
        t_exact = Fraction(t)
        count += sum(
            1 for i in gray if Fraction(int(num[i]), int(den[i])) > t_exact
        )
    return count


def moment_upper_bound(
    k_const: float,
    c_over_alpha: float,
    s: int,
    y: float,
    g: MultiplicativeSpec,
    table: PrimeTable,
) -> float:
    """K (c/alpha)^s prod_{p<=y}(1 + ((1+1/p)^s - 1)/g(p))."""
    if k_const <= 0 or c_over_alpha <= 0:
        raise DomainError("bound constants must be positive")
    prod = euler_product_bound(y, s, g, table) if y >= 2 else Fraction(1)
    return k_const * c_over_alpha**s * float(prod)


@dataclass(frozen=True)
class RatioFit:
    """Fitted ratio constant with its arg-max witness."""

    constant: float
    witness: int
    alpha: float
    range_max: int


def fit_ratio_constant(range_max: int, alpha: float, table: PrimeTable) -> RatioFit:
    """Fit c = max over 2 <= n <= range_max of
        alpha * (n/phi(n)) / prod_{p | n, p <= (ln n)^alpha} (1 + 1/p).

    The bound n/phi(n) <= (c/alpha) * prod then holds across the scanned
    range with equality at the witness. Segmented sieve scan, all in
    float64 (the fit is a summary constant, not an identity).
    """
    if not 0 < alpha <= 1:
        raise DomainError("alpha must lie in (0, 1]")
    if range_max < 2:
        raise DomainError("range_max must be >= 2")
    if math.isqrt(range_max) > table.limit:
        raise BoundsError(
            f"scan to {range_max} needs primes up to {math.isqrt(range_max)}, "
            f"table stops at {table.limit}"
        )
    sieve_ps = table.primes_up_to(math.isqrt(range_max)).tolist()
    # Primes that can ever pass p <= (ln n)^alpha within range, with the
    # n-threshold exp(p^(1/alpha)) above which each participates.
    denom_ps = []
    for p in sieve_ps:
        thr = math.exp(float(p) ** (1.0 / alpha))
        if thr <= range_max:
            denom_ps.append((p, thr))
        else:
            break
    best = -1.0
    witness = 2
    for lo in range(2, range_max + 1, _FIT_SEGMENT):
        hi = min(lo + _FIT_SEGMENT, range_max + 1)
        rem = np.arange(lo, hi, dtype=np.int64)
        ratio = np.ones(hi - lo, dtype=np.float64)
        for p in sieve_ps:
            if p >= hi:
                break
            ratio[(-lo) % p :: p] *= p / (p - 1.0)
            # Divide once at each power's stride: n with p^e || n loses
            # exactly e factors, so leftover cofactors are p-free.
            q = p
            while q < hi:
                rem[(-lo) % q :: q] //= p
                q *= p
        big = np.flatnonzero(rem > 1)
        if big.size:
            r = rem[big].astype(np.float64)
            ratio[big] *= r / (r - 1.0)
        denom = np.ones(hi - lo, dtype=np.float64)
        for p, thr in denom_ps:
            first = max(lo, math.ceil(thr))
            start = ((first + p - 1) // p) * p - lo
            if start < hi - lo:
                denom[start::p] *= (p + 1.0) / p
        cand = alpha * ratio / denom
        arg = int(cand.argmax())
        if cand[arg] > best:
            best = float(cand[arg])
            witness = lo + arg
    return RatioFit(constant=best, witness=witness, alpha=alpha, range_max=range_max)


def fit_moment_growth(s_values: Sequence[int], normalized: Sequence[float]) -> float:
    """Least C with S_s/N <= exp(s loglog(s+2) + C s) for every reported s.

    Closed form: max over s of (ln(S_s/N) - s loglog(s+2)) / s. Adding
    more s values can only raise the fit.
    """
    if len(s_values) == 0:
        raise DomainError("fit requires at least one moment order")
    if len(s_values) != len(normalized):
        raise DomainError("s_values and normalized must align")
    return max(
        (math.log(r) - s * math.log(math.log(s + 2))) / s
        for s, r in zip(s_values, normalized)
    )


def tail_exponent_choice(t: float, growth_c: float) -> int:
    """floor(exp(t e^-(C+1))) + 1: the moment order a threshold t selects."""
    if t <= 0:
        raise DomainError("threshold t must be positive")
    arg = t * math.exp(-(growth_c + 1.0))
    if arg > math.log(_S_CHOICE_CAP):
        raise CapacityError(
            f"selected moment order would exceed {_S_CHOICE_CAP}; t = {t} too large"
        )
    return int(math.floor(math.exp(arg))) + 1


def tail_bound_value(t: float, growth_c: float, s: int) -> float:
    """exp(s loglog(s+2) + C s - s log t): the per-N tail bound factor.

    With s from tail_exponent_choice this realizes doubly-exponential
    decay in t; vacuous (>= 1) whenever t <= 1.
    """
    if t <= 0:
        raise DomainError("threshold t must be positive")
    if s < 1:
        raise DomainError("moment order s must be >= 1")
    return math.exp(s * math.log(math.log(s + 2)) + growth_c * s - s * math.log(t))


@dataclass(frozen=True)
class TailFit:
    """count(t) <= scale * exp(-exp(rate * t)) * N over the reported grid."""

    scale: float  # c1 >= 1
    rate: float  # c2


def fit_tail_decay(
    thresholds: Sequence[float], counts: Sequence[int], n_total: int
) -> TailFit:
    """Fit (c1, c2) in count(t) <= c1 exp(-exp(c2 t)) N.

    Least squares of ln(-ln(count/(c1 N))) = c2 t over thresholds with
    0 < count < N, with c1 >= 1; c1 is then scaled up if any reported
    point (including zero counts, which always pass) sits above the
    curve, so the returned pair is feasible for the whole grid.
    """
    if len(thresholds) != len(counts):
        raise DomainError("thresholds and counts must align")
    pts = [
        (float(t), int(c))
        for t, c in zip(thresholds, counts)
        if 1 <= c < n_total
    ]
    if len(pts) < 3:
        raise InsufficientDataError(
            f"tail fit needs >= 3 thresholds with 1 <= count < N, got {len(pts)}"
        )
    ts = np.asarray([t for t, _ in pts])
    lnfrac = np.asarray([math.log(c / n_total) for _, c in pts])  # negative

    def rate_for(log_c1: float) -> float:
        y = np.log(log_c1 - lnfrac)
        return float((ts * y).sum() / (ts * ts).sum())

    def sse(log_c1: float) -> float:
        y = np.log(log_c1 - lnfrac)
        r = rate_for(log_c1)
        return float(((y - r * ts) ** 2).sum())

    res = minimize_scalar(sse, bounds=(0.0, 40.0), method="bounded",
                          options={"xatol": 1e-10})
    log_c1 = float(res.x) if res.success else 0.0
    if sse(0.0) <= sse(log_c1):  # prefer the boundary c1 = 1 when equal
        log_c1 = 0.0
    rate = rate_for(log_c1)
    scale = max(1.0, math.exp(log_c1))
    # Feasibility across every reported threshold.
    need = max(
        (c / n_total) / math.exp(-math.exp(rate * t))
        for t, c in zip(thresholds, counts)
    )
    if need > scale:
        scale = need * (1.0 + 1e-12)
    return TailFit(scale=scale, rate=rate)


# Exact sums from long runs can reach millions of digits; reports embed
# them only while they stay printable, the API always has the Fraction.
_EXACT_STR_BITS = 4096


def _exact_str(value: Fraction | None) -> str | None:
    if value is None:
        return None
    if max(value.numerator.bit_length(), value.denominator.bit_length()) > _EXACT_STR_BITS:
        return None
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class MomentReport:
    """Per-order moment sums with the fitted growth constant."""

    label: str
    count: int
    s_values: tuple[int, ...]
    sums_exact: tuple[Fraction | None, ...]
    sums_float: tuple[float, ...]
    normalized: tuple[float, ...]
    growth_constant: float

    def to_dict(self) -> dict:
        rows = []
        for s, ex, fl, nm in zip(
            self.s_values, self.sums_exact, self.sums_float, self.normalized
        ):
            rows.append(
                {
                    "s": s,
                    "sum": fl,
                    "sum_exact": _exact_str(ex),
                    "normalized": nm,
                }
            )
        return {
            "sequence": self.label,
            "count": self.count,
            "rows": rows,
            "fitted_constants": {"moment_growth": self.growth_constant},
        }


@dataclass(frozen=True)
class TailReport:
    """Per-threshold exceedance counts with Markov and fitted bounds."""

    label: str
    count: int
    thresholds: tuple[float, ...]
    counts: tuple[int, ...]
    fractions: tuple[float, ...]
    markov_bounds: tuple[float, ...]
    chosen_s: tuple[int, ...]
    theoretical: tuple[float, ...]
    growth_constant: float
    tail_fit: TailFit | None

    def to_dict(self) -> dict:
        rows = []
        for i, t in enumerate(self.thresholds):
            rows.append(
                {
                    "t": t,
                    "count": self.counts[i],
                    "fraction": self.fractions[i],
                    "markov_bound": self.markov_bounds[i],
                    "chosen_s": self.chosen_s[i],
                    "theoretical_bound": self.theoretical[i],
                }
            )
        fits: dict[str, float] = {"moment_growth": self.growth_constant}
        if self.tail_fit is not None:
            fits["tail_scale"] = self.tail_fit.scale
            fits["tail_rate"] = self.tail_fit.rate
        return {
            "sequence": self.label,
            "count": self.count,
            "rows": rows,
            "fitted_constants": fits,
        }


def moment_report(
    seq: SequenceInstance,
    s_values: Sequence[int],
    table: PrimeTable,
    exact: bool | None = None,
    threads: int = 1,
) -> MomentReport:
    if not s_values:
        raise DomainError("at least one moment order is required")
    ratios = totient_ratios(seq, table, threads=threads)
    exacts = []
    floats = []
    for s in s_values:
        ex, fl = moment_sum(seq, s, table, exact=exact, ratios=ratios)
        exacts.append(ex)
        floats.append(fl)
    normalized = tuple(f / seq.count for f in floats)
    growth = fit_moment_growth(tuple(s_values), normalized)
    return MomentReport(
        label=seq.label,
        count=seq.count,
        s_values=tuple(int(s) for s in s_values),
        sums_exact=tuple(exacts),
        sums_float=tuple(floats),
        normalized=normalized,
        growth_constant=growth,
    )


def tail_report(
    seq: SequenceInstance,
    thresholds: Sequence[float],
    table: PrimeTable,
    s_values: Sequence[int] = tuple(range(1, 9)),
    exact: bool | None = None,
    threads: int = 1,
) -> TailReport:
    if not thresholds:
        raise DomainError("at least one threshold is required")
    ratios = totient_ratios(seq, table, threads=threads)
    moments = moment_report(seq, s_values, table, exact=exact, threads=threads)
    counts = tuple(tail_count(seq, t, table, ratios=ratios) for t in thresholds)
    fractions = tuple(c / seq.count for c in counts)
    markov = tuple(
        min(fl / t**s for s, fl in zip(moments.s_values, moments.sums_float))
        for t in thresholds
    )
    chosen = tuple(tail_exponent_choice(t, moments.growth_constant) for t in thresholds)
    theoretical = tuple(
        tail_bound_value(t, moments.growth_constant, s)
        for t, s in zip(thresholds, chosen)
    )
    try:
        fit = fit_tail_decay(thresholds, counts, seq.count)
    except InsufficientDataError:
        fit = None
    return TailReport(
        label=seq.label,
        count=seq.count,
        thresholds=tuple(float(t) for t in thresholds),
        counts=counts,
        fractions=fractions,
        markov_bounds=markov,
        chosen_s=chosen,
        theoretical=theoretical,
        growth_constant=moments.growth_constant,
        tail_fit=fit,
    )

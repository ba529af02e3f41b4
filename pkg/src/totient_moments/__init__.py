"""Totient-ratio moment sums and tail counts over structured sequences.

A numpy-backed library for computing S_s = sum (a_n/phi(a_n))^s and the
exceedance counts #{n : a_n/phi(a_n) > t} for three sequence families
(integer polynomials, polynomials over primes, tuples of linear forms),
evaluating the corresponding multiplicative upper bounds exactly, and
fitting every constant those bounds leave unspecified. All identities
used along the way are checkable in exact rational arithmetic; the test
suite does exactly that.
"""

from .arith import (
    Factorization,
    PrimeTable,
    euler_phi,
    factorize,
    is_prime,
    mobius,
    phi_sieve,
    sieve_primes,
    totient_ratio,
    totient_ratio_parts,
)
from .congruence import (
    RootCount,
    count_roots,
    count_roots_crt,
    lagrange_bound,
    max_root_ratio,
)
from .errors import (
    BoundsError,
    CapacityError,
    DivergenceError,
    DomainError,
    InsufficientDataError,
    InvariantViolation,
)
from .moments import (
    MomentReport,
    RatioFit,
    TailFit,
    TailReport,
    fit_moment_growth,
    fit_ratio_constant,
    fit_tail_decay,
    moment_report,
    moment_sum,
    moment_upper_bound,
    tail_bound_value,
    tail_count,
    tail_exponent_choice,
    tail_report,
    totient_ratios,
)
from .progressions import (
    BrunTitchmarshReport,
    brun_titchmarsh_report,
    prime_residue_counts,
    progression_decomposition,
)
from .sequences import (
    LinearDeltaSpec,
    OmegaFit,
    PolynomialSpec,
    SequenceInstance,
    divisible_count,
    fit_divisibility_bound,
    linear_delta_sequence,
    poly_int_sequence,
    poly_prime_sequence,
)
from .smooth import (
    MultiplicativeSpec,
    SmoothSet,
    enumerate_smooth,
    euler_product_bound,
    inverse_weight_prime_sum,
    lcm_tuple_weight,
    lcm_tuple_weight_at_prime,
    prime_harmonic_sum,
    smooth_divisor_sum,
)

__version__ = "0.1.0"

"""kjparts: exact counting and congruence verification for color-restricted
partitions, plus the truncated hook-length comparison lab."""

__version__ = "0.1.0"

from .partitions import (
    HookCensus,
    conjugate,
    distinct_size_count,
    enumerate_partitions,
    frequencies,
    hook_census,
    hook_lengths,
    is_self_conjugate,
    max_distinct_sizes,
    self_conjugate_two_size_count,
)
from .arith import (
    divisor_count,
    divisors,
    factorize,
    is_prime,
    is_square,
    odd_order_prime_count,
    sigma,
    valuation,
)
from .qpoly import QPoly
from .series import (
    INTEGER_RING,
    POLY_RING,
    RATIONAL_RING,
    BudgetError,
    CoefficientRing,
    RingMismatchError,
    TruncatedSeries,
    congruent_mod,
    eta_expand,
    parse_eta_term,
    symbolic_binomial_pow,
)
from .colored import (
    MarkedOverpartition,
    bijection_backward,
    bijection_forward,
    ck1_decomposition_check,
    ckj_enumerate,
    ckj_listing,
    ckj_series,
    fn_polynomial,
    format_colored,
    kcolored_series,
    nu_count,
    nu_series,
    overpartition_series,
    partition_series,
)
from .congruence import (
    CongruenceClaim,
    IdentityEntry,
    SequenceSpec,
    VerificationReport,
    builtin_claims,
    builtin_identities,
    h_parity_scan,
    nu2_divisor_identity,
    representation_count,
    rouse_lemma_scan,
    verify_claim,
    verify_identity,
)
from .hooklen import (
    HookComparison,
    binom3_identity_check,
    c1b2_exact_sum,
    c1b2_series,
    compare_low_order,
    hook_poly_sum,
    lambda4_frequency_identity,
    nekrasov_okounkov_series,
    restricted_sum,
)

"""Exact and interval-certified monotonicity checks for root-ratio sequences.

For a positive sequence a_n the root ratio is r_n = a_{n+1}^(1/(n+1)) / a_n^(1/n).
This package computes the classical sequences exactly (big integers and
fractions), compares r_n against r_{n+1} with machine-checked rigor (exact
integer cross-powering or outward-rounded dyadic interval arithmetic, never
bare floating point), and ships a small suite of named finite checks plus a
command-line interface.
"""

from .compare import (
    DEFAULT_CAP_BITS,
    DEFAULT_EXACT_BUDGET,
    DEFAULT_START_BITS,
    Direction,
    LogCombination,
    LogTerm,
    Method,
    MethodStats,
    MonotonicityReport,
    Verdict,
    check_monotone,
    cmp_roots,
    combine_reports,
    find_min_start,
    ratio_step_combination,
    ratio_step_verdict,
    ratio_table,
    sign_of_log_combination,
)
from .numerics import (
    DivisionByIntervalContainingZero,
    Dyadic,
    DyadicInterval,
    NonPositiveArgument,
    Ordering,
    cmp_exact,
    interval_arith,
    interval_e,
    interval_ln,
    round_outward,
)
from .paperchecks import (
    CheckResult,
    CheckStatus,
    NotUnitDiscriminant,
    check_derangement_offset,
    check_derangement_window,
    check_firoozbakht,
    check_harmonic_window,
    check_harmonic_xlogx,
    check_log_quadratic_bound,
    check_lucas_gap_bound,
    check_offset_second_difference,
    check_prime_ratio_refinement,
    check_stirling_remainder,
    check_unit_discriminant_tail,
    constants_suite,
    paper_suite,
)
from .sequences import (
    Derangement,
    Harmonic,
    IndexBelowDomainStart,
    InvalidParameters,
    Lucas,
    LucasConstants,
    Primes,
    Product,
    Sequence,
    SquarefreeSum,
    derangement_term,
    fibonacci,
    harmonic_term,
    lucas_constants,
    lucas_term,
    nth_prime,
    squarefree_sum,
    term,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "CheckStatus",
    "DEFAULT_CAP_BITS",
    "DEFAULT_EXACT_BUDGET",
    "DEFAULT_START_BITS",
    "Derangement",
    "Direction",
    "DivisionByIntervalContainingZero",
    "Dyadic",
    "DyadicInterval",
    "Harmonic",
    "IndexBelowDomainStart",
    "InvalidParameters",
    "LogCombination",
    "LogTerm",
    "Lucas",
    "LucasConstants",
    "Method",
    "MethodStats",
    "MonotonicityReport",
    "NonPositiveArgument",
    "NotUnitDiscriminant",
    "Ordering",
    "Primes",
    "Product",
    "Sequence",
    "SquarefreeSum",
    "Verdict",
    "check_derangement_offset",
    "check_derangement_window",
    "check_firoozbakht",
    "check_harmonic_window",
    "check_harmonic_xlogx",
    "check_log_quadratic_bound",
    "check_lucas_gap_bound",
    "check_monotone",
    "check_offset_second_difference",
    "check_prime_ratio_refinement",
    "check_stirling_remainder",
    "check_unit_discriminant_tail",
    "cmp_exact",
    "cmp_roots",
    "combine_reports",
    "constants_suite",
    "derangement_term",
    "fibonacci",
    "find_min_start",
    "harmonic_term",
    "interval_arith",
    "interval_e",
    "interval_ln",
    "lucas_constants",
    "lucas_term",
    "nth_prime",
    "paper_suite",
    "ratio_step_combination",
    "ratio_step_verdict",
    "ratio_table",
    "round_outward",
    "sign_of_log_combination",
    "squarefree_sum",
    "term",
]

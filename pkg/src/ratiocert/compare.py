"""Certified sign decisions for integer combinations of logarithms.

The object decided here is S = sum_i c_i * ln(x_i) with integer c_i and
positive rational x_i.  Three routes exist:

* interval ladder: evaluate S with outward-rounded enclosures at 128 bits,
  doubling the precision until the enclosure excludes zero or a cap is hit;
* exact cross-power: compare prod x_i^{c_i} against 1 with big integers,
  the only route that can certify S = 0;
* adaptive (default): take the exact route immediately when the estimated
  integer size is small, otherwise ladder first and fall back to exact
  within a size budget, else report Undecided.

Root-ratio monotonicity reduces to such signs: with r_n =
a_{n+1}^{1/(n+1)} / a_n^{1/n}, the comparison r_n > r_{n+1} is equivalent to
2n(n+2)*ln a_{n+1} - (n+1)(n+2)*ln a_n - n(n+1)*ln a_{n+2} > 0 after
clearing the positive denominator n(n+1)(n+2).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import islice
from typing import Iterable, Iterator, Optional, Sequence as Seq

from .numerics import (
    DyadicInterval,
    Ordering,
    _check_bits,
    interval_ln,
    iv_add_exact,
    iv_div_scalar,
    iv_scale,
    iv_sub_exact,
    round_outward,
)
from .sequences import Product, Sequence

DEFAULT_START_BITS = 128
DEFAULT_CAP_BITS = 1 << 16
DEFAULT_EXACT_BUDGET = 1 << 31
# below this estimated product size the exact route is cheaper than any ladder
CHEAP_EXACT_BITS = 1 << 20


class Direction(Enum):
    DECREASING = "decreasing"
    INCREASING = "increasing"


class Method(Enum):
    EXACT = "exact"
    INTERVAL = "interval"


@dataclass(frozen=True)
class LogTerm:
    coefficient: int
    base: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.coefficient, int) or self.coefficient == 0:
            raise ValueError(f"coefficient must be a nonzero integer, got {self.coefficient!r}")
        b = Fraction(self.base)
        if b <= 0:
            raise ValueError(f"log base must be positive, got {b}")
        object.__setattr__(self, "base", b)


@dataclass(frozen=True)
class LogCombination:
    """Integer-weighted sum of logs of positive rationals."""

    terms: tuple[LogTerm, ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, Fraction]]) -> "LogCombination":
        """Build from (coefficient, base) pairs, merging repeated bases and
        dropping terms whose merged coefficient vanishes."""
        merged: dict[Fraction, int] = {}
        for c, base in pairs:
            b = Fraction(base)
            merged[b] = merged.get(b, 0) + c
        return cls(tuple(LogTerm(c, b) for b, c in merged.items() if c != 0))


@dataclass(frozen=True)
class Verdict:
    """Comparison outcome plus the certificate that produced it."""

    ordering: Ordering
    method: Optional[Method]
    bits: Optional[int]
    escalations: int = 0

    def to_json(self) -> dict:
        return {
            "ordering": self.ordering.value,
            "method": self.method.value if self.method else None,
            "bits": self.bits,
            "escalations": self.escalations,
        }


def estimate_exact_bits(comb: LogCombination) -> int:
    """Upper estimate of the bit size of the exact cross-power comparison."""
    return sum(
        abs(t.coefficient)
        * (t.base.numerator.bit_length() + t.base.denominator.bit_length())
        for t in comb.terms
    )


def decide_exact(comb: LogCombination) -> Ordering:
    """Sign of the combination by comparing exact integer cross-powers."""
    lhs = 1
    rhs = 1
    for t in comb.terms:
        c = t.coefficient
        num, den = t.base.numerator, t.base.denominator
        if c > 0:
            lhs *= num**c
            rhs *= den**c
        else:
            lhs *= den**-c
            rhs *= num**-c
    if lhs > rhs:
        return Ordering.GREATER
    if lhs < rhs:
        return Ordering.LESS
    return Ordering.EQUAL


def evaluate_combination(comb: LogCombination, bits: int) -> DyadicInterval:
    """Enclosure of sum c_i ln(x_i) at the given working precision."""
    _check_bits(bits)
    total = DyadicInterval.point(0)
    for t in comb.terms:
        enc = round_outward(t.base, bits)
        total = iv_add_exact(total, iv_scale(interval_ln(enc, bits), t.coefficient))
    return total


def sign_of_log_combination(
    comb: LogCombination,
    *,
    start_bits: int = DEFAULT_START_BITS,
    cap_bits: int = DEFAULT_CAP_BITS,
    exact_budget: int = DEFAULT_EXACT_BUDGET,
    mode: str = "adaptive",
) -> Verdict:
    """Certified sign of the combination; see module docstring for routes."""
    _check_bits(start_bits)
    if cap_bits < start_bits:
        raise ValueError("precision cap below starting precision")
    if mode not in ("adaptive", "interval", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    if not comb.terms:
        return Verdict(Ordering.EQUAL, Method.EXACT, None)
    cost = estimate_exact_bits(comb)
    if mode == "exact":
        if cost > exact_budget:
            return Verdict(Ordering.UNDECIDED, None, None)
        return Verdict(decide_exact(comb), Method.EXACT, None)
    if mode == "adaptive" and cost <= min(CHEAP_EXACT_BITS, exact_budget):
        return Verdict(decide_exact(comb), Method.EXACT, None)
    escalations = 0
    bits = start_bits
    while True:
        enc = evaluate_combination(comb, bits)
        if enc.strictly_positive():
            return Verdict(Ordering.GREATER, Method.INTERVAL, bits, escalations)
        if enc.strictly_negative():
            return Verdict(Ordering.LESS, Method.INTERVAL, bits, escalations)
        if bits >= cap_bits:
            break
        # once a rung costs as much as the whole exact comparison would
        # (ties can never be separated by intervals), stop climbing early
        if mode == "adaptive" and cost <= min(16 * bits, exact_budget):
            return Verdict(decide_exact(comb), Method.EXACT, None, escalations)
        bits = min(bits * 2, cap_bits)
        escalations += 1
    if mode == "adaptive" and cost <= exact_budget:
        return Verdict(decide_exact(comb), Method.EXACT, None, escalations)
    return Verdict(Ordering.UNDECIDED, Method.INTERVAL, bits, escalations)


def cmp_roots(a_lo: Fraction, n: int, a_hi: Fraction, **opts) -> Verdict:
    """Ordering of a_hi**(1/(n+1)) versus a_lo**(1/n).

    Greater means the (n+1)-th root of a_hi exceeds the n-th root of a_lo;
    decided from the sign of n*ln(a_hi) - (n+1)*ln(a_lo).
    """
    if n < 1:
        raise ValueError(f"root index must be >= 1, got {n}")
    comb = LogCombination.from_pairs([(n, Fraction(a_hi)), (-(n + 1), Fraction(a_lo))])
    return sign_of_log_combination(comb, **opts)


# ---------------------------------------------------------------------------
# ratio-step decisions and range scans


def _ratio_coefficients(n: int) -> tuple[int, int, int]:
    # weights of (a_{n+1}, a_n, a_{n+2}) after clearing n(n+1)(n+2)
    return 2 * n * (n + 2), -(n + 1) * (n + 2), -n * (n + 1)


def _leaf_sequences(spec: Sequence) -> list[Sequence]:
    if isinstance(spec, Product):
        return _leaf_sequences(spec.left) + _leaf_sequences(spec.right)
    return [spec]


def _window_pairs(n: int, windows: Iterable[tuple[Fraction, Fraction, Fraction]]):
    c1, c0, c2 = _ratio_coefficients(n)
    for a0, a1, a2 in windows:
        yield (c1, a1)
        yield (c0, a0)
        yield (c2, a2)


def ratio_step_combination(spec: Sequence, n: int) -> LogCombination:
    """Cleared-denominator combination whose sign compares r_n with r_{n+1}.

    For products the children's combinations are summed term by term, which
    is the same object as the combination of the product sequence.
    """
    spec._validate_index(n)
    windows = [
        (leaf.term(n), leaf.term(n + 1), leaf.term(n + 2))
        for leaf in _leaf_sequences(spec)
    ]
    return LogCombination.from_pairs(_window_pairs(n, windows))


def ratio_step_verdict(spec: Sequence, n: int, **opts) -> Verdict:
    """Greater iff r_n > r_{n+1} (strictly decreasing step at n)."""
    return sign_of_log_combination(ratio_step_combination(spec, n), **opts)


@dataclass(frozen=True)
class MethodStats:
    exact: int = 0
    interval: int = 0
    undecided: int = 0
    max_bits: int = 0
    escalations: int = 0

    def merged(self, other: "MethodStats") -> "MethodStats":
        return MethodStats(
            self.exact + other.exact,
            self.interval + other.interval,
            self.undecided + other.undecided,
            max(self.max_bits, other.max_bits),
            self.escalations + other.escalations,
        )

    def to_json(self) -> dict:
        return {"exact": self.exact, "interval": self.interval, "max_bits": self.max_bits}


@dataclass(frozen=True)
class MonotonicityReport:
    sequence: str
    start: int
    stop: int
    direction: Direction
    violations: tuple[int, ...]
    undecided: tuple[int, ...]
    min_valid_start: int
    stats: MethodStats

    def certified(self) -> bool:
        return not self.violations and not self.undecided


def _min_valid_start(start: int, violations: Seq[int]) -> int:
    return violations[-1] + 1 if violations else start


def check_monotone(
    spec: Sequence,
    start: int,
    stop: int,
    direction: Direction,
    **opts,
) -> MonotonicityReport:
    """Scan ratio steps n = start..stop-2 against the claimed direction.

    Indices whose verdict contradicts the direction (including an exact tie)
    are violations; Undecided indices are reported separately and also defeat
    certification.
    """
    spec._validate_index(start)
    if stop < start + 2:
        raise ValueError(f"scan needs stop >= start + 2, got [{start}, {stop}]")
    expected = Ordering.GREATER if direction is Direction.DECREASING else Ordering.LESS
    leaves = _leaf_sequences(spec)
    iters: list[Iterator[Fraction]] = [leaf.terms(start, stop) for leaf in leaves]
    windows = [deque(islice(it, 3), maxlen=3) for it in iters]
    violations: list[int] = []
    undecided: list[int] = []
    exact = interval = undec = max_bits = escal = 0
    for n in range(start, stop - 1):
        comb = LogCombination.from_pairs(_window_pairs(n, [tuple(w) for w in windows]))
        v = sign_of_log_combination(comb, **opts)
        if v.ordering is Ordering.UNDECIDED:
            undecided.append(n)
            undec += 1
        elif v.ordering is not expected:
            violations.append(n)
        if v.method is Method.EXACT:
            exact += 1
        elif v.method is Method.INTERVAL:
            interval += 1
            max_bits = max(max_bits, v.bits or 0)
        escal += v.escalations
        if n < stop - 2:
            for w, it in zip(windows, iters):
                w.append(next(it))
    return MonotonicityReport(
        sequence=spec.name,
        start=start,
        stop=stop,
        direction=direction,
        violations=tuple(violations),
        undecided=tuple(undecided),
        min_valid_start=_min_valid_start(start, violations),
        stats=MethodStats(exact, interval, undec, max_bits, escal),
    )


def combine_reports(parts: Seq[MonotonicityReport]) -> MonotonicityReport:
    """Merge block reports produced by sharding a scan by index ranges.

    Blocks must be ordered and contiguous: each block's window range picks up
    exactly where the previous one ended (block k scans n in [start, stop-2],
    so the next block starts at stop - 1).
    """
    if not parts:
        raise ValueError("no reports to combine")
    first = parts[0]
    for prev, cur in zip(parts, parts[1:]):
        if cur.sequence != first.sequence or cur.direction is not first.direction:
            raise ValueError("cannot combine reports of different scans")
        if cur.start != prev.stop - 1:
            raise ValueError(
                f"non-contiguous blocks: [{prev.start},{prev.stop}] then [{cur.start},{cur.stop}]"
            )
    violations: tuple[int, ...] = ()
    undecided: tuple[int, ...] = ()
    stats = MethodStats()
    for part in parts:
        violations += part.violations
        undecided += part.undecided
        stats = stats.merged(part.stats)
    return MonotonicityReport(
        sequence=first.sequence,
        start=first.start,
        stop=parts[-1].stop,
        direction=first.direction,
        violations=violations,
        undecided=undecided,
        min_valid_start=_min_valid_start(first.start, violations),
        stats=stats,
    )


def find_min_start(
    spec: Sequence, horizon: int, direction: Direction, **opts
) -> Optional[int]:
    """Smallest N with no violation for N <= n <= horizon-2, scanning from the
    sequence's first index; None when violations persist to the end.  The
    result is empirical up to the horizon, with no claim beyond it."""
    report = check_monotone(spec, spec.domain_start, horizon, direction, **opts)
    return min_start_from_report(report)


def min_start_from_report(report: MonotonicityReport) -> Optional[int]:
    if not report.violations:
        return report.start
    candidate = report.violations[-1] + 1
    if candidate > report.stop - 2:
        return None
    return candidate


def ratio_table(
    spec: Sequence, indices: Seq[int], bits: int = DEFAULT_START_BITS
) -> list[tuple[int, DyadicInterval]]:
    """Enclosures of ln r_n = ln(a_{n+1})/(n+1) - ln(a_n)/n at given indices."""
    _check_bits(bits)
    rows = []
    for n in indices:
        spec._validate_index(n)
        ln_lo = interval_ln(round_outward(spec.term(n), bits), bits)
        ln_hi = interval_ln(round_outward(spec.term(n + 1), bits), bits)
        enc = iv_sub_exact(iv_div_scalar(ln_hi, n + 1, bits), iv_div_scalar(ln_lo, n, bits))
        rows.append((n, enc))
    return rows

"""
Evaluation planning: admissibility, coefficient bounds, term counts and
working precision for the block-Horner evaluator.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from bigfix.backend import bit_length, ceil_log2
from .descriptor import DescriptorError, SeriesDescriptor


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of the b(i) ≥ 2, |p(j)/q(j)| ≤ 1 scan."""
    passed: bool
    upto: int
    index: Optional[int] = None
    condition: Optional[str] = None
    message: str = ''


class ConditionViolation(DescriptorError):
    """The series breaks b(i) ≥ 2 or |p(j)/q(j)| ≤ 1 on the planned range."""

    def __init__(self, report: ConditionReport, series_name: str = ''):
        self.report = report
        prefix = f"{series_name}: " if series_name else ''
        super().__init__(f"{prefix}{report.message} (requires b(i) >= 2 and |p(j)/q(j)| <= 1)")


@dataclass(frozen=True)
class EvalPlan:
    """Parameters of one block-Horner evaluation."""
    n: int
    r: int
    k1: int
    r1: int
    W: int
    omega: int
    m: int

    def block_range(self, t: int) -> Optional[Tuple[int, int]]:
        """
        Index range [start, stop] covered by block t, or None when empty.

        Blocks are r1 wide; the last block always ends at r so that the
        blocks partition 0..r even when k1·r1 - 1 ≠ r.
        """
        if not 1 <= t <= self.k1:
            raise ValueError(f"Block index {t} outside 1..{self.k1}")

        start = (t - 1) * self.r1
        stop = self.r if t == self.k1 else min(t * self.r1 - 1, self.r)
        if start > stop:
            return None
        return start, stop

    def to_dict(self) -> dict:
        return {
            'n': self.n, 'r': self.r, 'k1': self.k1, 'r1': self.r1,
            'W': self.W, 'omega': self.omega, 'm': self.m,
        }


def check_conditions(series: SeriesDescriptor, r: int) -> ConditionReport:
    """Scan 0..r for b(i) ≥ 2 and |p(j)/q(j)| ≤ 1; q(j) = 0 is a descriptor error."""
    if r < 0:
        raise ValueError(f"Range end must be non-negative, got {r}")

    for i in range(r + 1):
        b = series.b(i)
        if b < 2:
            return ConditionReport(False, r, i, 'b', f"b({i})={b} < 2")

        q = series.q(i)
        if q == 0:
            raise DescriptorError(f"{series.name}: q({i}) = 0")

        p = series.p(i)
        if abs(p) > abs(q):
            return ConditionReport(False, r, i, 'p/q', f"|p({i})/q({i})| = |{p}/{q}| > 1")

    return ConditionReport(True, r, message=f"conditions hold on 0..{r}")


def scan_W(series: SeriesDescriptor, r: int) -> Tuple[int, int]:
    """W = max |a(i)|, |b(i)|, |p(j)|, |q(j)| over 0..r, and ω = l(W) + 1."""
    if r < 0:
        raise ValueError(f"Range end must be non-negative, got {r}")

    W = 0
    for i in range(r + 1):
        W = max(W, abs(series.a(i)), abs(series.b(i)), abs(series.p(i)), abs(series.q(i)))
    return W, bit_length(W) + 1


def terms_needed(series: SeriesDescriptor, k: int) -> int:
    """r = μ(k): last index of a partial sum within 2^(-k) of S."""
    if k < 1:
        raise ValueError(f"Accuracy must be at least one bit, got {k}")
    return series.tail.terms(k)


def choose_m(n: int, r: int, W: int) -> int:
    """
    Working precision m = (n+1) + ⌈log2(n+1) + 2·log2(r) + log2(W)⌉.

    The ceiling of the sum is the ceiling of log2 of the integer (n+1)·r²·W,
    so it is computed exactly.
    """
    if n < 0 or r < 1 or W < 1:
        raise ValueError(f"choose_m needs n >= 0, r >= 1, W >= 1 (got n={n}, r={r}, W={W})")
    return (n + 1) + ceil_log2((n + 1) * r * r * W)


def prefactor_guard_bits(prefactor: Fraction) -> int:
    """Extra target bits so that prefactor·error stays within the unscaled budget."""
    if prefactor == 0:
        return 0
    return max(0, ceil_log2(abs(prefactor)))


def plan_evaluation(series: SeriesDescriptor, n: int) -> EvalPlan:
    """Plan a block-Horner evaluation of S(μ(n+1)) to 2^(-(n+1))."""
    if n < 1:
        raise ValueError(f"Target precision must be at least one bit, got {n}")

    r = terms_needed(series, n + 1)

    report = check_conditions(series, r)
    if not report.passed:
        raise ConditionViolation(report, series.name)

    # least k1 with 2^k1 >= r; a single block when r <= 2
    k1 = (r - 1).bit_length() if r > 2 else 1
    r1 = max(1, -(-r // k1))

    W, omega = scan_W(series, r)
    m = choose_m(n, max(r, 1), max(W, 1))

    return EvalPlan(n=n, r=r, k1=k1, r1=r1, W=W, omega=omega, m=m)

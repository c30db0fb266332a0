"""
Classical binary-splitting evaluator: one split over the whole range 0..r,
then a single division. Used as the oracle and as the space baseline, since
it materializes the full-length T(0, r).
"""

from bigfix.accounting import charge, release
from bigfix.dyadic import Dyadic, Ratio, rational_to_dyadic, round_output
from series.descriptor import SeriesDescriptor
from series.planner import (
    ConditionViolation,
    check_conditions,
    plan_evaluation,
    prefactor_guard_bits,
    terms_needed,
)

from .base import BaseEvaluator
from .binsplit import split_sum


def exact_eval(series: SeriesDescriptor, n: int) -> Dyadic:
    """
    prefactor·S to within 2^(-(n+1)) + 2^(-(n+2)), with n+2 fractional bits.

    r = μ(n+1+g), where g covers a prefactor larger than one.
    """
    if n < 1:
        raise ValueError(f"Target precision must be at least one bit, got {n}")

    guard = prefactor_guard_bits(series.prefactor)
    r = terms_needed(series, n + 1 + guard)

    report = check_conditions(series, r)
    if not report.passed:
        raise ConditionViolation(report, series.name)

    pqbt = split_sum(series, 0, r)
    num = series.prefactor.numerator * pqbt.T
    den = series.prefactor.denominator * pqbt.B * pqbt.Q
    charge(num, den)

    value = rational_to_dyadic(Ratio(num, den), n + 2)
    release(num, den, *pqbt.parts())
    return value


def evaluate_series(series: SeriesDescriptor, n: int) -> Dyadic:
    """round(exact_eval(s, n+1), n): error ≤ 3·2^(-(n+3)) + 2^(-(n+1)) < 2^(-n)."""
    return round_output(exact_eval(series, n + 1), n)


class ClassicalEvaluator(BaseEvaluator):
    """Full-range binary splitting with exact final division."""

    def evaluate_series(self, series: SeriesDescriptor, n: int) -> Dyadic:
        # plan at the target exact_eval(s, n+1) sums to, so plan.r is the r it uses
        guard = prefactor_guard_bits(series.prefactor)
        plan = plan_evaluation(series, n + 1 + guard)
        self.plans.append(plan)
        self._log(f"{series.name}: n={n}, r={plan.r}")

        value = evaluate_series(series, n)
        self.blocks += 1
        return value

    def get_algorithm_name(self) -> str:
        return "Classical"

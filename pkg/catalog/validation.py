"""
Descriptor validation: admissibility, tail model, cross-algorithm agreement
and an optional reference value.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from bigfix.dyadic import Dyadic
from evaluators import classical, linspace
from evaluators.binsplit import split_product, split_sum
from evaluators.combination import evaluate_constant
from series.descriptor import ConstantFormula, DescriptorError, SeriesDescriptor
from series.planner import EvalPlan, check_conditions, plan_evaluation, terms_needed

# extra terms summed past μ(k) by the tail proxy
TAIL_PROBE_TERMS = 20

MIN_PROBE_BITS = 8


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ''


@dataclass
class ValidationReport:
    """Per-check outcome of validating one series or formula."""
    name: str
    probe_bits: int
    checks: List[CheckResult] = field(default_factory=list)
    plan: Optional[EvalPlan] = None
    value: Optional[Dyadic] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def add(self, check: CheckResult):
        self.checks.append(check)

    def to_dict(self) -> dict:
        return {
            'name': self.name,
            'probe_bits': self.probe_bits,
            'passed': self.passed,
            'checks': [{'name': c.name, 'passed': c.passed, 'detail': c.detail} for c in self.checks],
            'plan': self.plan.to_dict() if self.plan else None,
        }


def tail_proxy_check(series: SeriesDescriptor, k: int) -> CheckResult:
    """
    |S(μ+20) - S(μ)| ≤ 2^(-(k+1)) with μ = μ(k).

    A stand-in for |S - S(μ)| ≤ 2^(-k): the next twenty terms must already
    fit in half the budget.
    """
    mu = terms_needed(series, k)
    try:
        P0, Q0 = split_product(series, 0, mu)
        pqbt = split_sum(series, mu + 1, mu + TAIL_PROBE_TERMS)
    except DescriptorError as e:
        return CheckResult('tail', False, str(e))

    # Δ = (P0/Q0)·T/(B·Q)
    num = abs(P0 * pqbt.T)
    den = abs(Q0 * pqbt.B * pqbt.Q)
    if num << (k + 1) <= den:
        return CheckResult('tail', True, f"mu({k})={mu}: next {TAIL_PROBE_TERMS} terms within 2^-{k + 1}")

    delta = Fraction(int(num), int(den))
    return CheckResult(
        'tail', False,
        f"mu({k})={mu}: next {TAIL_PROBE_TERMS} terms sum to {float(delta):.3e} > 2^-{k + 1}; tail model too optimistic"
    )


def _conditions_check(series: SeriesDescriptor, probe_bits: int) -> CheckResult:
    r = terms_needed(series, probe_bits)
    try:
        report = check_conditions(series, r)
    except DescriptorError as e:
        return CheckResult('conditions', False, str(e))
    return CheckResult('conditions', report.passed, report.message)


def _reference_check(value: Dyadic, reference: Fraction, tolerance: Fraction, probe_bits: int) -> CheckResult:
    diff = abs(value.to_fraction() - reference)
    limit = tolerance + Fraction(1, 1 << probe_bits)
    if diff <= limit:
        return CheckResult('reference', True, f"|value - reference| = {float(diff):.3e}")
    return CheckResult('reference', False, f"|value - reference| = {float(diff):.3e} > {float(limit):.3e}")


def validate_descriptor(series: SeriesDescriptor, probe_bits: int,
                        reference: Optional[Fraction] = None,
                        tolerance: Fraction = Fraction(0)) -> ValidationReport:
    """
    Run every check on `series` at probe_bits; failures are reported, not raised.

    The agreement check compares linspace and classical at probe_bits and
    passes when they differ by at most 2^(-(probe_bits-1)). With `reference`,
    prefactor·S must lie within tolerance + 2^(-probe_bits) of it.
    """
    if probe_bits < MIN_PROBE_BITS:
        raise ValueError(f"probe_bits must be at least {MIN_PROBE_BITS}, got {probe_bits}")

    report = ValidationReport(series.name, probe_bits)

    conditions = _conditions_check(series, probe_bits)
    report.add(conditions)
    report.add(tail_proxy_check(series, probe_bits))

    if not conditions.passed:
        report.add(CheckResult('agreement', False, 'skipped: conditions failed'))
        if reference is not None:
            report.add(CheckResult('reference', False, 'skipped: conditions failed'))
        return report

    try:
        report.plan = plan_evaluation(series, probe_bits)
        fast = linspace.evaluate_series(series, probe_bits)
        slow = classical.evaluate_series(series, probe_bits)
    except DescriptorError as e:
        report.add(CheckResult('agreement', False, str(e)))
        return report

    report.value = fast
    diff = abs(fast.to_fraction() - slow.to_fraction())
    if diff <= Fraction(1, 1 << (probe_bits - 1)):
        report.add(CheckResult('agreement', True, f"linspace and classical agree to 2^-{probe_bits - 1}"))
    else:
        report.add(CheckResult('agreement', False, f"linspace and classical differ by {float(diff):.3e}"))

    if reference is not None:
        report.add(_reference_check(fast, reference, tolerance, probe_bits))
    return report


def validate_formula(formula: ConstantFormula, probe_bits: int,
                     reference: Optional[Fraction] = None,
                     tolerance: Fraction = Fraction(0)) -> ValidationReport:
    """validate_descriptor on every member, plus a reference check on the combined value."""
    report = ValidationReport(formula.name, probe_bits)

    for series in formula.series:
        member = validate_descriptor(series, probe_bits)
        if report.plan is None:
            report.plan = member.plan
        for check in member.checks:
            report.add(CheckResult(f"{series.name}.{check.name}", check.passed, check.detail))

    if report.passed:
        report.value = evaluate_constant(formula, probe_bits)
        if reference is not None:
            report.add(_reference_check(report.value, reference, tolerance, probe_bits))
    elif reference is not None:
        report.add(CheckResult('reference', False, 'skipped: member checks failed'))
    return report

"""Series descriptors and evaluation planning."""

from .polynomial import Polynomial, poly_eval
from .descriptor import (
    ConstantFormula,
    DescriptorError,
    FactorialTailModel,
    SeriesDescriptor,
    Tail,
    TailModel,
)
from .planner import (
    ConditionReport,
    ConditionViolation,
    EvalPlan,
    check_conditions,
    choose_m,
    plan_evaluation,
    prefactor_guard_bits,
    scan_W,
    terms_needed,
)

__all__ = [
    'Polynomial',
    'poly_eval',
    'ConstantFormula',
    'DescriptorError',
    'FactorialTailModel',
    'SeriesDescriptor',
    'Tail',
    'TailModel',
    'ConditionReport',
    'ConditionViolation',
    'EvalPlan',
    'check_conditions',
    'choose_m',
    'plan_evaluation',
    'prefactor_guard_bits',
    'scan_W',
    'terms_needed',
]

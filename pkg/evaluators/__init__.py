"""Series evaluators: classical binary splitting and linear-space block-Horner."""

from .base import BaseEvaluator, EvalResult
from .binsplit import PQBT, combine, split_product, split_sum
from .classical import ClassicalEvaluator, exact_eval
from .linspace import (
    BlockValue,
    HornerBoundError,
    HornerTrace,
    LinSpaceEvaluator,
    block_sigma,
    block_tau,
    evaluate_series,
    horner_eval,
    horner_exact,
)
from .combination import evaluate_constant, guard_bits

ALGORITHMS = {
    'classical': ClassicalEvaluator,
    'linspace': LinSpaceEvaluator,
}

__all__ = [
    'ALGORITHMS',
    'BaseEvaluator',
    'EvalResult',
    'PQBT',
    'combine',
    'split_product',
    'split_sum',
    'ClassicalEvaluator',
    'exact_eval',
    'BlockValue',
    'HornerBoundError',
    'HornerTrace',
    'LinSpaceEvaluator',
    'block_sigma',
    'block_tau',
    'evaluate_series',
    'horner_eval',
    'horner_exact',
    'evaluate_constant',
    'guard_bits',
]

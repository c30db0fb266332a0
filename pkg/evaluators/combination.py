"""Rational linear combinations of series (Machin-style formulas)."""

from math import lcm
from typing import Callable, Optional

from bigfix.backend import ceil_log2
from bigfix.dyadic import Dyadic, Ratio, round_rational
from series.descriptor import ConstantFormula, SeriesDescriptor

SeriesEvaluator = Callable[[SeriesDescriptor, int], Dyadic]


def guard_bits(formula: ConstantFormula) -> int:
    """g = ⌈log2 Σ|coeff|⌉ + 1."""
    weight = formula.coefficient_weight
    if weight == 0:
        return 1
    return ceil_log2(weight) + 1


def evaluate_constant(formula: ConstantFormula, n: int,
                      evaluate_series: Optional[SeriesEvaluator] = None) -> Dyadic:
    """
    Σ coeff·series to within 2^(-n), rounded to n fractional bits.

    Each series is evaluated to n+g bits, so the combined error is at most
    2^(-(n+1)) before the final rounding adds at most another 2^(-(n+1)).
    """
    if not formula.terms:
        raise ValueError(f"Formula '{formula.name}' has no terms")
    if n < 1:
        raise ValueError(f"Target precision must be at least one bit, got {n}")

    if evaluate_series is None:
        from .linspace import evaluate_series

    if len(formula.terms) == 1 and formula.terms[0][0] == 1:
        return evaluate_series(formula.terms[0][1], n)

    target = max(1, n + guard_bits(formula))
    values = [(coeff, evaluate_series(series, target)) for coeff, series in formula.terms]

    # exact Σ c_i·d_i over the common denominator lcm(den c_i)·2^F
    F = max(d.frac_bits for _, d in values)
    D = lcm(*(coeff.denominator for coeff, _ in values))
    numerator = sum(
        coeff.numerator * (D // coeff.denominator) * (d.mantissa << (F - d.frac_bits))
        for coeff, d in values
    )
    return round_rational(Ratio(numerator, D << F), n)

"""
Linear-space block-Horner evaluator.

The partial sum S(r) is regrouped into k1 blocks of r1 terms,

    S(r) = σ_1 + τ_2[σ_2 + τ_3[σ_3 + … + τ_k1·σ_k1]],

where σ_t is the block sum with products restarted at the block start
(plus the leading term ξ_t = a(s)/b(s) for t ≥ 2) and τ_t carries the
products across the previous block. Each σ_t, τ_t is computed exactly by
binary splitting, cut to m fractional bits and dropped right after use, and
the nesting is unwound innermost-out with truncation to m bits after every
step. No number longer than O(n) bits is ever held.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from bigfix.accounting import charge, release
from bigfix.backend import bit_length
from bigfix.dyadic import (
    Dyadic,
    Ratio,
    dyadic_add,
    dyadic_mul_truncate,
    rational_to_dyadic,
    round_output,
    truncate,
)
from series.descriptor import DescriptorError, SeriesDescriptor
from series.planner import EvalPlan, plan_evaluation, prefactor_guard_bits

from .base import BaseEvaluator
from .binsplit import split_product, split_sum


class HornerBoundError(AssertionError):
    """|h_i| reached (i+1)·r1·W: the recombination is broken, not the input."""


@dataclass(frozen=True)
class BlockValue:
    """σ*_t and τ*_t at m fractional bits (τ is absent for the first block)."""
    t: int
    sigma: Dyadic
    tau: Optional[Dyadic] = None


@dataclass
class HornerTrace:
    """Per-step magnitudes of one horner_eval run."""
    bound_factor: int = 0
    steps: List[Tuple[int, Dyadic]] = field(default_factory=list)
    max_bits: int = 0
    blocks: int = 0

    def record(self, i: int, h: Dyadic):
        self.steps.append((i, abs(h)))
        self.max_bits = max(self.max_bits, h.bit_length)


def bound_check_enabled() -> bool:
    return os.getenv('HYPERSERIES_ASSERT_LEMMA3', '0').strip() == '1'


def block_sigma_exact(series: SeriesDescriptor, plan: EvalPlan, t: int) -> Ratio:
    """σ_t as an exact (unreduced) rational; 0 for a block past r. The caller owns the result."""
    block = plan.block_range(t)
    if block is None:
        charge(0, 1)
        return Ratio(0, 1)
    start, stop = block

    if t == 1:
        pqbt = split_sum(series, start, stop)
        value = pqbt.ratio()
    else:
        a, b = series.a(start), series.b(start)
        if b == 0:
            raise DescriptorError(f"{series.name}: b({start}) = 0")
        if start == stop:
            charge(a, b)
            return Ratio(a, b)

        # ξ_t + T/(B·Q) over a common denominator
        pqbt = split_sum(series, start + 1, stop)
        BQ = pqbt.B * pqbt.Q
        value = Ratio(a * BQ + b * pqbt.T, b * BQ)

    charge(*value)
    release(*pqbt.parts())
    return value


def block_tau_exact(series: SeriesDescriptor, plan: EvalPlan, t: int) -> Ratio:
    """τ_t as P/Q: products over 0..r1 for t = 2, ((t-2)r1, (t-1)r1] after that."""
    if not 2 <= t <= plan.k1:
        raise ValueError(f"τ is defined for blocks 2..{plan.k1}, got {t}")

    if t == 2:
        P, Q = split_product(series, 0, plan.r1)
    else:
        P, Q = split_product(series, (t - 2) * plan.r1 + 1, (t - 1) * plan.r1)
    return Ratio(P, Q)


def block_sigma(series: SeriesDescriptor, plan: EvalPlan, t: int) -> Dyadic:
    """σ*_t: σ_t truncated to m fractional bits."""
    exact = block_sigma_exact(series, plan, t)
    value = rational_to_dyadic(exact, plan.m)
    release(*exact)
    return value


def block_tau(series: SeriesDescriptor, plan: EvalPlan, t: int) -> Dyadic:
    """τ*_t: τ_t truncated to m fractional bits."""
    exact = block_tau_exact(series, plan, t)
    value = rational_to_dyadic(exact, plan.m)
    release(*exact)
    return value


def block_value(series: SeriesDescriptor, plan: EvalPlan, t: int) -> BlockValue:
    tau = block_tau(series, plan, t) if t >= 2 else None
    return BlockValue(t, block_sigma(series, plan, t), tau)


def horner_eval(series: SeriesDescriptor, plan: EvalPlan,
                trace: Optional[HornerTrace] = None,
                check_bound: Optional[bool] = None) -> Dyadic:
    """
    h_1 = σ*_k1, then h_i = trunc_m(σ*_{k1-i+1} + τ*_{k1-i+2}·h_{i-1}) for i = 2..k1.

    |h - S(r)| < 2^(-m)·m·k1²·W. With check_bound (default: the
    HYPERSERIES_ASSERT_LEMMA3 switch) every step asserts |h_i| < (i+1)·r1·W.
    """
    if check_bound is None:
        check_bound = bound_check_enabled()

    m = plan.m
    bound_factor = plan.r1 * plan.W
    if trace is not None:
        trace.bound_factor = bound_factor

    def observe(i: int, h: Dyadic):
        if check_bound and abs(h.mantissa) >= ((i + 1) * bound_factor) << h.frac_bits:
            raise HornerBoundError(
                f"{series.name}: |h_{i}| >= {(i + 1) * bound_factor} "
                f"(k1={plan.k1}, r1={plan.r1}, W={plan.W}, m={m})"
            )
        if trace is not None:
            trace.record(i, h)

    h = block_sigma(series, plan, plan.k1)
    charge(h.mantissa)
    observe(1, h)
    blocks = 1

    for i in range(2, plan.k1 + 1):
        t = plan.k1 - i + 1
        # σ_t pairs with the τ of the block after it
        sigma = block_sigma(series, plan, t)
        tau = block_tau(series, plan, t + 1)
        charge(sigma.mantissa, tau.mantissa)

        exact = dyadic_mul_truncate(tau, h, tau.frac_bits + h.frac_bits)
        h_next = truncate(dyadic_add(sigma, exact), m)

        charge(h_next.mantissa)
        release(h.mantissa, sigma.mantissa, tau.mantissa)
        h = h_next
        observe(i, h)
        blocks += 1

    release(h.mantissa)
    if trace is not None:
        trace.blocks = blocks
    return h


def horner_exact(series: SeriesDescriptor, plan: EvalPlan) -> Fraction:
    """The same block recombination in exact rational arithmetic."""
    h = block_sigma_exact(series, plan, plan.k1).to_fraction()
    for t in range(plan.k1 - 1, 0, -1):
        sigma = block_sigma_exact(series, plan, t).to_fraction()
        tau = block_tau_exact(series, plan, t + 1).to_fraction()
        h = sigma + tau * h
    return h


def _evaluate_series(series: SeriesDescriptor, n: int,
                     trace: Optional[HornerTrace] = None,
                     check_bound: Optional[bool] = None) -> Tuple[Dyadic, EvalPlan]:
    if n < 1:
        raise ValueError(f"Target precision must be at least one bit, got {n}")

    # internal target n+2 (+ prefactor guard), then one rounding to n bits
    guard = prefactor_guard_bits(series.prefactor)
    plan = plan_evaluation(series, n + 2 + guard)
    h = horner_eval(series, plan, trace, check_bound)

    prefactor = series.prefactor
    if prefactor != 1:
        scaled = Ratio(prefactor.numerator * h.mantissa, prefactor.denominator << h.frac_bits)
        h = rational_to_dyadic(scaled, plan.m)

    return round_output(h, n), plan


def evaluate_series(series: SeriesDescriptor, n: int) -> Dyadic:
    """prefactor·S rounded to n fractional bits, |result - prefactor·S| ≤ 2^(-n)."""
    value, _ = _evaluate_series(series, n)
    return value


def evaluate_series_traced(series: SeriesDescriptor, n: int,
                           check_bound: Optional[bool] = None) -> Tuple[Dyadic, EvalPlan, HornerTrace]:
    """evaluate_series plus the plan and Horner trace it ran with."""
    trace = HornerTrace()
    value, plan = _evaluate_series(series, n, trace, check_bound)
    return value, plan, trace


class LinSpaceEvaluator(BaseEvaluator):
    """Block-Horner evaluation in linear space."""

    def __init__(self, check_bound: Optional[bool] = None):
        super().__init__()
        self.check_bound = check_bound
        self.last_trace: Optional[HornerTrace] = None

    def evaluate_series(self, series: SeriesDescriptor, n: int) -> Dyadic:
        trace = HornerTrace()
        value, plan = _evaluate_series(series, n, trace, self.check_bound)

        self.plans.append(plan)
        self.blocks += trace.blocks
        self.last_trace = trace
        self._log(f"{series.name}: n={n}, r={plan.r}, k1={plan.k1}, r1={plan.r1}, "
                  f"W={plan.W}, m={plan.m}, largest h {trace.max_bits} bits "
                  f"(limit {plan.m + bit_length((plan.k1 + 1) * plan.r1 * plan.W)})")
        return value

    def get_algorithm_name(self) -> str:
        return "LinSpace"

import logging
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from bigfix.dyadic import Dyadic
from catalog.constants import get_constant
from evaluators import classical
from evaluators.base import EvalResult
from evaluators.binsplit import split_sum
from evaluators.classical import ClassicalEvaluator
from evaluators.combination import evaluate_constant, guard_bits
from evaluators.linspace import (
    HornerBoundError,
    HornerTrace,
    LinSpaceEvaluator,
    block_sigma,
    block_tau,
    block_value,
    evaluate_series,
    evaluate_series_traced,
    horner_eval,
    horner_exact,
)
from series.descriptor import ConstantFormula
from series.planner import ConditionViolation, EvalPlan, plan_evaluation
from tests.conftest import BUNDLED_SERIES
from tests.oracle import admissible_series, brute_partial_sum, brute_value, make_series, within


def plan_for(r: int, m: int = 64, W: int = 2) -> EvalPlan:
    k1 = (r - 1).bit_length() if r > 2 else 1
    r1 = max(1, -(-r // k1))
    return EvalPlan(n=1, r=r, k1=k1, r1=r1, W=W, omega=W.bit_length() + 1, m=m)


def exact_sum(series, r: int) -> Fraction:
    return split_sum(series, 0, r).ratio().to_fraction()


def test_block_sigma_geometric(geometric):
    plan = EvalPlan(n=1, r=3, k1=2, r1=2, W=2, omega=3, m=40)
    assert block_sigma(geometric, plan, 1) == Fraction(3, 8)
    # ξ_2 = a(2)/b(2) = 1/2 plus the block-local term 1/4
    assert block_sigma(geometric, plan, 2) == Fraction(3, 4)


def test_block_sigma_lone_leading_term(geometric):
    plan = EvalPlan(n=1, r=4, k1=3, r1=2, W=2, omega=3, m=40)
    assert block_sigma(geometric, plan, 3) == Fraction(1, 2)


def test_block_sigma_past_r_is_zero(geometric):
    plan = EvalPlan(n=1, r=3, k1=3, r1=2, W=2, omega=3, m=40)
    assert block_sigma(geometric, plan, 3) == 0


def test_block_tau_geometric(geometric):
    assert block_tau(geometric, EvalPlan(n=1, r=3, k1=2, r1=2, W=2, omega=3, m=40), 2) == Fraction(1, 8)
    assert block_tau(geometric, EvalPlan(n=1, r=5, k1=3, r1=2, W=2, omega=3, m=40), 3) == Fraction(1, 4)
    with pytest.raises(ValueError):
        block_tau(geometric, EvalPlan(n=1, r=5, k1=3, r1=2, W=2, omega=3, m=40), 1)


def test_block_tau_telescoping_is_one():
    series = make_series(p=(3, 1), q=(3, 1))
    plan = plan_for(40)
    for t in range(2, plan.k1 + 1):
        assert block_tau(series, plan, t) == 1


def test_block_tau_within_unit(bundled_series):
    plan = plan_evaluation(bundled_series, 256)
    bound = 1 + Fraction(1, 1 << plan.m)
    for t in range(2, plan.k1 + 1):
        assert abs(block_tau(bundled_series, plan, t).to_fraction()) <= bound


def test_horner_two_blocks(geometric):
    plan = EvalPlan(n=1, r=3, k1=2, r1=2, W=2, omega=3, m=40)
    h = horner_eval(geometric, plan)
    assert h == Fraction(15, 32)
    assert h == sum(Fraction(1, 2 ** (i + 2)) for i in range(4))


def test_horner_single_block(geometric):
    plan = EvalPlan(n=1, r=2, k1=1, r1=2, W=2, omega=3, m=40)
    trace = HornerTrace()
    assert horner_eval(geometric, plan, trace) == Fraction(7, 16)
    assert trace.blocks == 1
    assert [i for i, _ in trace.steps] == [1]


def test_truncation_error_bound_geometric_100_bits(geometric):
    plan = plan_evaluation(geometric, 100)
    assert plan.m == 122
    error = abs(horner_eval(geometric, plan).to_fraction() - exact_sum(geometric, plan.r))
    assert error < Fraction(plan.m * plan.k1 ** 2 * plan.W, 1 << plan.m)
    assert error <= Fraction(1, 1 << 101)


@pytest.mark.parametrize('name', sorted(BUNDLED_SERIES))
@pytest.mark.parametrize('n', [64, 256, 1024])
def test_multi_block_horner_within_error_bound(name, n):
    series = BUNDLED_SERIES[name]()
    plan = plan_evaluation(series, n)
    assert plan.k1 >= 2

    error = abs(horner_eval(series, plan).to_fraction() - exact_sum(series, plan.r))
    assert error < Fraction(plan.m * plan.k1 ** 2 * plan.W, 1 << plan.m)


def test_block_value_pairs_sigma_and_tau(zeta3):
    plan = plan_evaluation(zeta3, 64)
    first = block_value(zeta3, plan, 1)
    assert first.tau is None
    assert first.sigma == block_sigma(zeta3, plan, 1)
    for t in range(2, plan.k1 + 1):
        value = block_value(zeta3, plan, t)
        assert (value.sigma, value.tau) == (block_sigma(zeta3, plan, t), block_tau(zeta3, plan, t))


@pytest.mark.parametrize('name', sorted(BUNDLED_SERIES))
def test_exact_horner_identity(name):
    series = BUNDLED_SERIES[name]()
    for r in range(0, 65):
        assert horner_exact(series, plan_for(r)) == exact_sum(series, r)


@settings(max_examples=200, deadline=None)
@given(admissible_series(), st.integers(1, 128))
def test_truncation_error_bound_random_series(series, n):
    plan = plan_evaluation(series, n)
    h = horner_eval(series, plan, check_bound=True)
    error = abs(h.to_fraction() - exact_sum(series, plan.r))
    assert error < Fraction(plan.m * plan.k1 ** 2 * plan.W, 1 << plan.m)


@settings(max_examples=50, deadline=None)
@given(admissible_series(), st.integers(0, 80))
def test_exact_horner_identity_random(series, r):
    assert horner_exact(series, plan_for(r)) == brute_partial_sum(series, r)


def test_magnitude_check_catches_a_broken_bound(geometric):
    plan = EvalPlan(n=1, r=8, k1=3, r1=3, W=0, omega=1, m=40)
    with pytest.raises(HornerBoundError):
        horner_eval(geometric, plan, check_bound=True)


def test_magnitude_check_from_environment(monkeypatch, geometric):
    monkeypatch.setenv('HYPERSERIES_ASSERT_LEMMA3', '1')
    plan = EvalPlan(n=1, r=8, k1=3, r1=3, W=0, omega=1, m=40)
    with pytest.raises(HornerBoundError):
        horner_eval(geometric, plan)
    monkeypatch.setenv('HYPERSERIES_ASSERT_LEMMA3', '0')
    horner_eval(geometric, plan)


def test_intermediate_sizes_are_linear(bundled_series):
    n = 2048
    _, plan, trace = evaluate_series_traced(bundled_series, n, check_bound=True)
    limit = plan.m + ((plan.k1 + 1) * plan.r1 * plan.W).bit_length()
    assert trace.max_bits <= limit
    assert trace.blocks == plan.k1
    for i, magnitude in trace.steps:
        assert magnitude.to_fraction() < (i + 1) * trace.bound_factor


def test_geometric_closed_form(geometric):
    for n in (64, 1024):
        value = evaluate_series(geometric, n)
        assert value.frac_bits == n
        assert within(value, Fraction(1, 2), n)


@pytest.mark.parametrize('n', [8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096])
def test_end_to_end_against_classical(bundled_series, n):
    fast = evaluate_series(bundled_series, n)
    slow = classical.evaluate_series(bundled_series, n)
    assert abs(fast.to_fraction() - slow.to_fraction()) <= Fraction(1, 1 << (n - 1))


@pytest.mark.parametrize('n', [8, 32, 64, 200])
def test_end_to_end_against_oracle(bundled_series, n):
    assert within(evaluate_series(bundled_series, n), brute_value(bundled_series, n), n)


def test_e_and_zeta3_values(exp1, zeta3):
    with mpmath.workdps(40):
        e = Fraction(mpmath.nstr(mpmath.e, 35, strip_zeros=False))
        z3 = Fraction(mpmath.nstr(mpmath.zeta(3), 35, strip_zeros=False))
    assert abs(evaluate_series(exp1, 64).to_fraction() - e) < Fraction(1, 1 << 63)
    assert abs(evaluate_series(zeta3, 32).to_fraction() - z3) < Fraction(1, 1 << 31)


def test_guard_bits():
    assert guard_bits(get_constant('pi')) == 6
    assert guard_bits(get_constant('e')) == 1


def test_pi_combination():
    with mpmath.workdps(60):
        pi = Fraction(mpmath.nstr(mpmath.pi, 55, strip_zeros=False))
    for n in (16, 64, 128):
        assert abs(evaluate_constant(get_constant('pi'), n).to_fraction() - pi) < Fraction(1, 1 << (n - 1))


def test_single_unit_term_is_the_series_value(zeta3):
    formula = ConstantFormula.single(zeta3)
    assert evaluate_constant(formula, 100) == evaluate_series(zeta3, 100)


def test_empty_formula_rejected():
    with pytest.raises(ValueError):
        evaluate_constant(ConstantFormula('empty', ()), 16)


def test_evaluators_run(zeta3):
    logger = logging.getLogger('test_evaluators')
    formula = ConstantFormula.single(zeta3)
    results = []
    for evaluator in (ClassicalEvaluator(), LinSpaceEvaluator(check_bound=True)):
        evaluator.set_logger(logger)
        result = evaluator.run(formula, 128)
        assert isinstance(result, EvalResult)
        assert result.success, result.error_message
        assert isinstance(result.value, Dyadic)
        results.append(result)

    classical_result, linspace_result = results
    assert classical_result.algorithm == 'classical'
    assert linspace_result.algorithm == 'linspace'
    assert linspace_result.plan == plan_evaluation(zeta3, 130)
    assert classical_result.plan == plan_evaluation(zeta3, 129)
    assert abs(classical_result.value.to_fraction() - linspace_result.value.to_fraction()) <= Fraction(1, 1 << 127)


def test_evaluator_run_captures_violations():
    formula = ConstantFormula.single(make_series(b=(1,)))
    result = LinSpaceEvaluator().run(formula, 32)
    assert not result.success
    assert isinstance(result.error, ConditionViolation)
    assert 'b(0)=1 < 2' in result.error_message

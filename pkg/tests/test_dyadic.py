from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bigfix import backend
from bigfix.backend import bit_length, ceil_log2, decimal_string, parse_decimal, select_backend, to_big
from bigfix.dyadic import (
    Dyadic,
    Ratio,
    digit_count,
    dyadic_add,
    dyadic_mul_truncate,
    parse_digits,
    rational_to_dyadic,
    render_digits,
    round_output,
    round_rational,
    truncate,
)

nonzero_fractions = st.fractions(max_denominator=10 ** 6).filter(lambda x: x != 0)
precisions = st.integers(0, 80)


def test_rational_to_dyadic_truncates_toward_zero():
    assert rational_to_dyadic(Fraction(1, 3), 4).mantissa == 5
    assert rational_to_dyadic(Fraction(-1, 3), 4).mantissa == -5
    assert rational_to_dyadic(Ratio(7, -2), 0).mantissa == -3


def test_rational_to_dyadic_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rational_to_dyadic(Ratio(1, 0), 8)


@given(nonzero_fractions, precisions)
def test_rational_to_dyadic_error_below_one_ulp(x, f):
    d = rational_to_dyadic(x, f)
    assert d.frac_bits == f
    assert abs(d.to_fraction() - x) < Fraction(1, 1 << f)
    assert abs(d.to_fraction()) <= abs(x)


def test_truncate_toward_zero():
    assert truncate(Dyadic(-7, 2), 1) == Dyadic(-3, 1)
    assert truncate(Dyadic(7, 2), 1) == Dyadic(3, 1)
    # widening is exact
    assert truncate(Dyadic(3, 1), 5) == Dyadic(48, 5)


def test_dyadic_add_aligns_precisions():
    assert dyadic_add(Dyadic(1, 1), Dyadic(1, 3)).to_fraction() == Fraction(5, 8)


@given(nonzero_fractions, nonzero_fractions, st.integers(1, 40), st.integers(1, 40), precisions)
def test_mul_truncate_bound(x, y, fx, fy, f):
    a, b = rational_to_dyadic(x, fx), rational_to_dyadic(y, fy)
    product = dyadic_mul_truncate(a, b, f)
    assert abs(product.to_fraction() - a.to_fraction() * b.to_fraction()) < Fraction(1, 1 << f)


def test_round_output_ties_away_from_zero():
    assert round_output(Dyadic(3, 2), 1) == Dyadic(2, 1)
    assert round_output(Dyadic(-3, 2), 1) == Dyadic(-2, 1)
    assert round_output(Dyadic(5, 3), 1) == Dyadic(1, 1)
    assert round_output(Dyadic(13, 4), 4).mantissa == 13


def test_round_output_cannot_add_bits():
    with pytest.raises(ValueError):
        round_output(Dyadic(1, 2), 3)


def test_round_rational():
    assert round_rational(Fraction(1, 3), 2).mantissa == 1
    assert round_rational(Fraction(-5, 8), 2).mantissa == -3
    assert round_rational(Ratio(5, 8), 2).mantissa == 3


@given(st.fractions(max_denominator=10 ** 6), precisions)
def test_round_rational_half_ulp(x, n):
    assert abs(round_rational(x, n).to_fraction() - x) <= Fraction(1, 1 << (n + 1))


@given(st.integers(-10 ** 30, 10 ** 30), st.integers(0, 60), st.integers(0, 60))
def test_round_output_matches_round_rational(mantissa, frac_bits, extra):
    d = Dyadic(mantissa, frac_bits + extra)
    assert round_output(d, frac_bits) == round_rational(d.to_fraction(), frac_bits)


def test_dyadic_equality_is_by_value():
    assert Dyadic(1, 1) == Dyadic(2, 2)
    assert hash(Dyadic(1, 1)) == hash(Dyadic(2, 2))
    assert Dyadic(3, 1) == Fraction(3, 2)
    assert Dyadic.from_int(5, 3).mantissa == 40


def test_negative_precision_rejected():
    with pytest.raises(ValueError):
        Dyadic(1, -1)


def test_render_digits():
    d = Dyadic(0b1011, 3)
    assert render_digits(d, 2, 3) == '1.011'
    assert render_digits(d, 10, 3) == '1.375'
    assert render_digits(d, 10, 2) == '1.37'
    assert render_digits(-d, 10, 3) == '-1.375'
    assert render_digits(Dyadic(1, 4), 10, 6) == '0.062500'


def test_render_digits_unsupported_base():
    with pytest.raises(ValueError, match='Unsupported base'):
        render_digits(Dyadic(1, 1), 16, 4)


def test_parse_digits_inverts_render():
    assert parse_digits('1.011', 2) == Fraction(11, 8)
    assert parse_digits('-0.0625', 10) == Fraction(-1, 16)


@given(st.integers(-10 ** 40, 10 ** 40), st.integers(0, 100), st.sampled_from([2, 10]))
def test_rendered_digits_are_truncated(mantissa, frac_bits, base):
    d = Dyadic(mantissa, frac_bits)
    count = digit_count(frac_bits, base) + 1
    shown = parse_digits(render_digits(d, base, count), base)
    assert abs(shown) <= abs(d.to_fraction())
    assert abs(d.to_fraction()) - abs(shown) < Fraction(1, base ** count)


def test_digit_count():
    assert digit_count(64, 2) == 63
    assert digit_count(64, 10) == 18
    assert digit_count(3400, 10) == 1022
    assert digit_count(1, 10) == 0


def test_ceil_log2():
    assert ceil_log2(1) == 0
    assert ceil_log2(2) == 1
    assert ceil_log2(3) == 2
    assert ceil_log2(1024) == 10
    assert ceil_log2(Fraction(1, 3)) == -1
    assert ceil_log2(Fraction(1, 4)) == -2
    assert ceil_log2(Fraction(20)) == 5
    with pytest.raises(ValueError):
        ceil_log2(0)


@given(st.fractions(min_value=Fraction(1, 10 ** 9), max_value=10 ** 9))
def test_ceil_log2_is_least_power(x):
    c = ceil_log2(x)
    assert Fraction(2) ** c >= x
    assert Fraction(2) ** (c - 1) < x


def test_python_backend():
    assert select_backend('python') == 'python'
    assert type(to_big(12)) is int
    assert backend.backend_name() == 'python'


def test_unknown_backend_rejected():
    with pytest.raises(ValueError, match='Unknown integer backend'):
        select_backend('fortran')


def test_gmpy2_backend():
    gmpy2 = pytest.importorskip('gmpy2')
    assert select_backend('gmpy2') == 'gmpy2'
    assert isinstance(to_big(12), type(gmpy2.mpz(0)))


def test_decimal_round_trip_beyond_str_limit():
    value = 7 ** 20000
    assert parse_decimal(decimal_string(value)) == value


def test_bit_length_of_powers_of_two():
    assert bit_length(0) == 0
    for k in range(65):
        assert bit_length(1 << k) == k + 1
        assert bit_length(-(1 << k)) == k + 1
        assert bit_length((1 << (k + 1)) - 1) == k + 1


def test_bit_length_on_gmpy2_integers():
    pytest.importorskip('gmpy2')
    select_backend('gmpy2')
    for k in range(65):
        assert bit_length(to_big(1) << k) == k + 1

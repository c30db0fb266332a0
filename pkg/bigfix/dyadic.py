"""
Dyadic fixed-point numbers: an integer mantissa scaled by 2^(-frac_bits).

All approximate arithmetic in the evaluators runs on this layer. Values are
sign-magnitude; every truncation is toward zero, rounding is to nearest with
ties away from zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Union

from .backend import decimal_string, parse_decimal

SUPPORTED_BASES = (2, 10)


class Ratio(NamedTuple):
    """Unreduced rational num/den, used for exact values too large to reduce."""
    numerator: Any
    denominator: Any

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.numerator), int(self.denominator))


RationalLike = Union[Fraction, Ratio, int]


@dataclass(frozen=True, eq=False)
class Dyadic:
    """mantissa * 2^(-frac_bits). Not normalized; equality is by value."""
    mantissa: Any
    frac_bits: int

    def __post_init__(self):
        if self.frac_bits < 0:
            raise ValueError(f"frac_bits must be non-negative, got {self.frac_bits}")

    @classmethod
    def from_int(cls, value: int, frac_bits: int = 0) -> 'Dyadic':
        return cls(value << frac_bits, frac_bits)

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    @property
    def bit_length(self) -> int:
        """Total bits held by the mantissa magnitude."""
        return int(abs(self.mantissa).bit_length())

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.mantissa), 1 << self.frac_bits)

    def __neg__(self) -> 'Dyadic':
        return Dyadic(-self.mantissa, self.frac_bits)

    def __abs__(self) -> 'Dyadic':
        return Dyadic(abs(self.mantissa), self.frac_bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            f = max(self.frac_bits, other.frac_bits)
            return (self.mantissa << (f - self.frac_bits)) == (other.mantissa << (f - other.frac_bits))
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.to_fraction())


def _toward_zero_shift(value: Any, shift: int) -> Any:
    """value / 2^shift truncated toward zero."""
    if value < 0:
        return -((-value) >> shift)
    return value >> shift


def rational_to_dyadic(x: RationalLike, f: int) -> Dyadic:
    """Truncate x toward zero to f fractional bits: |d - x| < 2^(-f)."""
    if f < 0:
        raise ValueError(f"precision must be non-negative, got {f}")

    num, den = x.numerator, x.denominator
    if den == 0:
        raise ZeroDivisionError("rational_to_dyadic: zero denominator")
    if den < 0:
        num, den = -num, -den

    magnitude = (abs(num) << f) // den
    return Dyadic(-magnitude if num < 0 else magnitude, f)


def dyadic_add(a: Dyadic, b: Dyadic) -> Dyadic:
    """Exact sum at max(a.frac_bits, b.frac_bits)."""
    f = max(a.frac_bits, b.frac_bits)
    return Dyadic((a.mantissa << (f - a.frac_bits)) + (b.mantissa << (f - b.frac_bits)), f)


def truncate(d: Dyadic, f: int) -> Dyadic:
    """Re-express d with f fractional bits, truncating toward zero if f is smaller."""
    if f < 0:
        raise ValueError(f"precision must be non-negative, got {f}")
    if f >= d.frac_bits:
        return Dyadic(d.mantissa << (f - d.frac_bits), f)
    return Dyadic(_toward_zero_shift(d.mantissa, d.frac_bits - f), f)


def dyadic_mul_truncate(a: Dyadic, b: Dyadic, f: int) -> Dyadic:
    """Product truncated toward zero to f fractional bits; discarded part < 2^(-f)."""
    return truncate(Dyadic(a.mantissa * b.mantissa, a.frac_bits + b.frac_bits), f)


def round_rational(x: RationalLike, n: int) -> Dyadic:
    """Nearest multiple of 2^(-n) to x, ties away from zero."""
    if n < 0:
        raise ValueError(f"precision must be non-negative, got {n}")

    num, den = x.numerator, x.denominator
    if den == 0:
        raise ZeroDivisionError("round_rational: zero denominator")
    if den < 0:
        num, den = -num, -den

    q, rem = divmod(abs(num) << n, den)
    if 2 * rem >= den:
        q += 1
    return Dyadic(-q if num < 0 else q, n)


def round_output(d: Dyadic, n: int) -> Dyadic:
    """Round d to n fractional bits (nearest, ties away from zero)."""
    if d.frac_bits < n:
        raise ValueError(f"cannot round {d.frac_bits} fractional bits up to {n}")

    shift = d.frac_bits - n
    if shift == 0:
        return Dyadic(d.mantissa, n)

    magnitude = abs(d.mantissa)
    q = magnitude >> shift
    if (magnitude >> (shift - 1)) & 1:
        q += 1
    return Dyadic(-q if d.mantissa < 0 else q, n)


LOG10_2 = Fraction(301029995663981195213738894724493026768189881462108541310, 10 ** 57)


def digit_count(bits: int, base: int) -> int:
    """Digits backed by `bits` fractional bits: ⌊bits·log_base(2)⌋ - 1, never negative."""
    if base not in SUPPORTED_BASES:
        raise ValueError(f"Unsupported base {base}, expected 2 or 10")
    whole = bits if base == 2 else int(bits * LOG10_2)
    return max(0, whole - 1)


def render_digits(d: Dyadic, base: int, count: int) -> str:
    """Sign, integer part, point and `count` truncated digits of |d| in base 2 or 10."""
    if base not in SUPPORTED_BASES:
        raise ValueError(f"Unsupported base {base}, expected 2 or 10")
    if count < 0:
        raise ValueError(f"digit count must be non-negative, got {count}")

    magnitude = abs(d.mantissa)
    integer_part = magnitude >> d.frac_bits
    fraction = magnitude - (integer_part << d.frac_bits)
    digits = (fraction * base ** count) >> d.frac_bits

    if base == 2:
        head = format(int(integer_part), 'b')
        tail = format(int(digits), 'b').zfill(count) if count else ''
    else:
        head = decimal_string(integer_part)
        tail = decimal_string(digits).zfill(count) if count else ''

    sign = '-' if d.mantissa < 0 else ''
    return f"{sign}{head}.{tail}"


def parse_digits(text: str, base: int) -> Fraction:
    """Exact value of a string produced by render_digits."""
    if base not in SUPPORTED_BASES:
        raise ValueError(f"Unsupported base {base}, expected 2 or 10")

    text = text.strip()
    negative = text.startswith('-')
    if negative:
        text = text[1:]

    head, _, tail = text.partition('.')
    if base == 2:
        value = Fraction(int(head or '0', 2))
        if tail:
            value += Fraction(int(tail, 2), 2 ** len(tail))
    else:
        value = Fraction(parse_decimal(head or '0'))
        if tail:
            value += Fraction(parse_decimal(tail), 10 ** len(tail))

    return -value if negative else value

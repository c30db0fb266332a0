"""
Series descriptors.

A descriptor is one series

    S = Σ_{i≥0} a(i)/b(i) · Π_{j=0..i} p(j)/q(j)

together with its tail model μ and a rational prefactor (the evaluated
value is prefactor·S). A ConstantFormula is a rational linear combination
of descriptors, e.g. Machin's π = 16·arctan(1/5) − 4·arctan(1/239).
"""

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Tuple, Union

from .polynomial import Polynomial


class DescriptorError(ValueError):
    """A descriptor is unusable on the requested index range."""


@dataclass(frozen=True)
class TailModel:
    """μ(k) = ⌈alpha·k⌉ + beta, with |S - S(μ(k))| ≤ 2^(-k)."""
    alpha: Fraction
    beta: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'alpha', Fraction(self.alpha))
        if self.alpha < 0:
            raise ValueError(f"TailModel alpha must be non-negative, got {self.alpha}")
        if self.beta < 0:
            raise ValueError(f"TailModel beta must be non-negative, got {self.beta}")

    def terms(self, k: int) -> int:
        # ceiling division keeps this exact for any rational alpha
        return -((-self.alpha.numerator * k) // self.alpha.denominator) + self.beta


@dataclass(frozen=True)
class FactorialTailModel:
    """
    μ(k) = least r with (r+1)! ≥ 2^(k+1), plus beta.

    Only valid for series whose terms are bounded by 1/i!, like e's. One
    extra bit over the 2^(-k) requirement absorbs the float error of lgamma.
    """
    beta: int = 0

    def terms(self, k: int) -> int:
        target = (k + 1) * math.log(2)
        lo, hi = 0, max(1, k)
        while math.lgamma(hi + 2) < target:
            hi *= 2
        while lo < hi:
            mid = (lo + hi) // 2
            if math.lgamma(mid + 2) >= target:
                hi = mid
            else:
                lo = mid + 1
        return lo + self.beta


Tail = Union[TailModel, FactorialTailModel]


@dataclass(frozen=True)
class SeriesDescriptor:
    """One hypergeometric series with rational polynomial coefficients."""
    name: str
    a: Polynomial
    b: Polynomial
    p: Polynomial
    q: Polynomial
    tail: Tail
    prefactor: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, 'prefactor', Fraction(self.prefactor))

    def with_tail(self, tail: Tail) -> 'SeriesDescriptor':
        return replace(self, tail=tail)


@dataclass(frozen=True)
class ConstantFormula:
    """Σ coeff·series over the listed terms."""
    name: str
    terms: Tuple[Tuple[Fraction, SeriesDescriptor], ...]

    def __post_init__(self):
        terms = tuple((Fraction(c), s) for c, s in self.terms)
        object.__setattr__(self, 'terms', terms)

    @classmethod
    def single(cls, series: SeriesDescriptor, coeff: Fraction = Fraction(1)) -> 'ConstantFormula':
        return cls(series.name, ((coeff, series),))

    @property
    def series(self) -> Tuple[SeriesDescriptor, ...]:
        return tuple(s for _, s in self.terms)

    @property
    def coefficient_weight(self) -> Fraction:
        """Σ |coeff|, which sizes the guard bits of a combination."""
        return sum((abs(c) for c, _ in self.terms), Fraction(0))

"""
Bundled constants: e, π (Machin) and ζ(3).

Notes on the descriptors:
- e uses q(j) = j with q(0) = 1, so the products telescope to 1/i!.
- arctan(1/x) uses p(0) = q(0) = 1 and p(j) = -1, q(j) = x² after that.
- ζ(3) ships q(j) = 32(2j+1)^5. The misprinted q(j) = 32(j+1)^5 does
  not reproduce the series Σ (-1)^i (205i²+250i+77)((i+1)!)^5(i!)^5 / (2((2i+2)!)^5)
  (its partial sums drift to 1.195…); that form is kept in
  data/zeta3_misprint.json for comparison.
"""

from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional

from series.descriptor import ConstantFormula, FactorialTailModel, SeriesDescriptor, TailModel
from series.polynomial import Polynomial

DATA_DIR = Path(__file__).resolve().parent / 'data'

# leading decimals, used by the reference-value checks
REFERENCE_DIGITS: Dict[str, str] = {
    'e': '2.71828182845904523536028747135266249775724709369995',
    'pi': '3.14159265358979323846264338327950288419716939937510',
    'zeta3': '1.20205690315959428539973816151144999076498629234049',
}


class UnknownConstantError(LookupError):
    """Name not in the catalog."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Unknown constant '{name}'. Available constants: {', '.join(available_constants())}")


def geometric_series() -> SeriesDescriptor:
    """Σ 2^(-(i+2)) = 1/2; the closed-form test series."""
    return SeriesDescriptor(
        name='geometric',
        a=Polynomial.constant(1),
        b=Polynomial.constant(2),
        p=Polynomial.constant(1),
        q=Polynomial.constant(2),
        tail=TailModel(Fraction(1), 0),
    )


def exp_series(tight_tail: bool = False) -> SeriesDescriptor:
    """e = 2·Σ 1/(2·i!)."""
    # (μ+1)! outgrows 2^(k+1) well before μ = k/2 + 4 for every k ≥ 1
    tail = FactorialTailModel() if tight_tail else TailModel(Fraction(1, 2), 4)
    return SeriesDescriptor(
        name='exp1',
        a=Polynomial.constant(1),
        b=Polynomial.constant(2),
        p=Polynomial.constant(1),
        q=Polynomial.build([0, 1], [(0, 1)]),
        tail=tail,
        prefactor=Fraction(2),
    )


def arctan_series(x: int, alpha: Fraction) -> SeriesDescriptor:
    """arctan(1/x) = (2/x)·Σ (-1)^i / (2(2i+1)·x^(2i))."""
    return SeriesDescriptor(
        name=f'arctan_1_{x}',
        a=Polynomial.constant(1),
        b=Polynomial.build([2, 4]),
        p=Polynomial.build([-1], [(0, 1)]),
        q=Polynomial.build([x * x], [(0, 1)]),
        tail=TailModel(alpha, 1),
        prefactor=Fraction(2, x),
    )


def zeta3_series() -> SeriesDescriptor:
    """ζ(3) with q(j) = 32(2j+1)^5."""
    # 32(2j+1)^5 = 32 + 320j + 1280j² + 2560j³ + 2560j⁴ + 1024j⁵
    return SeriesDescriptor(
        name='zeta3',
        a=Polynomial.build([77, 250, 205]),
        b=Polynomial.constant(2),
        p=Polynomial.build([0, 0, 0, 0, 0, -1], [(0, 1)]),
        q=Polynomial.build([32, 320, 1280, 2560, 2560, 1024]),
        tail=TailModel(Fraction(1, 10), 1),
    )


def zeta3_misprint_series() -> SeriesDescriptor:
    """The q(j) = 32(j+1)^5 form; converges, but not to ζ(3)."""
    from .descriptor_io import load_descriptor
    return load_descriptor(DATA_DIR / 'zeta3_misprint.json', probe_bits=None)


def e_formula(tight_tail: bool = False) -> ConstantFormula:
    return ConstantFormula('e', ((Fraction(1), exp_series(tight_tail)),))


def pi_formula() -> ConstantFormula:
    """π = 16·arctan(1/5) - 4·arctan(1/239)."""
    # 25^(μ+1) and 239^(2(μ+1)) beat 2^k once alpha exceeds 1/log2(x²)
    return ConstantFormula('pi', (
        (Fraction(16), arctan_series(5, Fraction(7, 32))),
        (Fraction(-4), arctan_series(239, Fraction(1, 15))),
    ))


def zeta3_formula() -> ConstantFormula:
    return ConstantFormula('zeta3', ((Fraction(1), zeta3_series()),))


_CATALOG: Dict[str, Callable[[], ConstantFormula]] = {
    'e': e_formula,
    'pi': pi_formula,
    'zeta3': zeta3_formula,
}


def available_constants():
    return sorted(_CATALOG)


def get_constant(name: str, tight_tail: bool = False) -> ConstantFormula:
    """Bundled formula for `name`; tight_tail only affects e."""
    key = name.strip().lower()
    if key not in _CATALOG:
        raise UnknownConstantError(name)
    if key == 'e':
        return e_formula(tight_tail)
    return _CATALOG[key]()


def reference_value(name: str) -> Optional[Fraction]:
    """Leading decimals of a bundled constant as an exact fraction, if known."""
    text = REFERENCE_DIGITS.get(name)
    return Fraction(text) if text else None


def reference_tolerance(name: str) -> Fraction:
    """Error of reference_value(name): one unit in its last decimal."""
    text = REFERENCE_DIGITS[name]
    return Fraction(1, 10 ** len(text.partition('.')[2]))

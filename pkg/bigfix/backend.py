"""
Arbitrary-precision integer facility.

Every big product in the evaluators goes through whatever `to_big` returns:
gmpy2.mpz when it is available (GMP switches to FFT multiplication for large
operands), otherwise the builtin int. Multiplication is treated as a black box
and only measured, never reimplemented here.
"""

import os
import sys
from typing import Any, Optional

try:
    import gmpy2
except ImportError:  # pragma: no cover - depends on the environment
    gmpy2 = None

BACKENDS = ('auto', 'gmpy2', 'python')

_backend: Optional[str] = None


def select_backend(name: Optional[str] = None) -> str:
    """Select the integer backend ('auto', 'gmpy2' or 'python')."""
    global _backend

    if name is None:
        name = os.getenv('HYPERSERIES_BACKEND', 'auto')
    name = name.strip().lower()

    if name not in BACKENDS:
        raise ValueError(f"Unknown integer backend '{name}', expected one of {', '.join(BACKENDS)}")

    if name == 'gmpy2' and gmpy2 is None:
        raise ValueError("HYPERSERIES_BACKEND=gmpy2 but gmpy2 is not installed")

    if name == 'auto':
        name = 'gmpy2' if gmpy2 is not None else 'python'

    _backend = name
    return _backend


def backend_name() -> str:
    """Name of the active backend, selecting the default on first use."""
    if _backend is None:
        return select_backend()
    return _backend


def to_big(value: int) -> Any:
    """Wrap a small exact integer for the active backend."""
    if backend_name() == 'gmpy2':
        return gmpy2.mpz(value)
    return int(value)


def bit_length(u: Any) -> int:
    """l(u): length of the binary representation of |u| (l(0) = 0)."""
    return int(abs(u).bit_length())


def ceil_log2(x: Any) -> int:
    """Smallest integer c with 2**c >= x, for a positive integer or rational x."""
    num = int(x.numerator)
    den = int(x.denominator)
    if num <= 0 or den <= 0:
        raise ValueError(f"ceil_log2 needs a positive argument, got {num}/{den}")

    if den == 1:
        return (num - 1).bit_length()

    c = num.bit_length() - den.bit_length()
    # 2**c >= num/den  <=>  (den << c) >= num  (shifting num when c < 0)
    while not _pow2_at_least(c, num, den):
        c += 1
    while _pow2_at_least(c - 1, num, den):
        c -= 1
    return c


def _pow2_at_least(c: int, num: int, den: int) -> bool:
    if c >= 0:
        return (den << c) >= num
    return den >= (num << -c)


def decimal_string(value: Any) -> str:
    """Decimal text of an integer of any size."""
    if gmpy2 is not None:
        return gmpy2.mpz(value).digits(10)

    value = int(value)
    limit = getattr(sys, 'get_int_max_str_digits', None)
    if limit is None or limit() == 0:
        return str(value)

    # CPython caps int <-> str conversions; lift it for this call only
    previous = limit()
    sys.set_int_max_str_digits(0)
    try:
        return str(value)
    finally:
        sys.set_int_max_str_digits(previous)


def parse_decimal(text: str) -> int:
    """Inverse of decimal_string."""
    if gmpy2 is not None:
        return int(gmpy2.mpz(text, 10))

    limit = getattr(sys, 'get_int_max_str_digits', None)
    if limit is None or limit() == 0:
        return int(text)

    previous = limit()
    sys.set_int_max_str_digits(0)
    try:
        return int(text)
    finally:
        sys.set_int_max_str_digits(previous)

"""Exact integers and dyadic fixed-point arithmetic."""

from .backend import backend_name, bit_length, ceil_log2, select_backend, to_big
from .accounting import MemoryAccountant, accounting_scope, charge, payload_bytes, release
from .dyadic import (
    Dyadic,
    Ratio,
    dyadic_add,
    digit_count,
    dyadic_mul_truncate,
    parse_digits,
    rational_to_dyadic,
    render_digits,
    round_output,
    round_rational,
    truncate,
)

__all__ = [
    'backend_name',
    'bit_length',
    'ceil_log2',
    'select_backend',
    'to_big',
    'MemoryAccountant',
    'accounting_scope',
    'charge',
    'payload_bytes',
    'release',
    'Dyadic',
    'Ratio',
    'dyadic_add',
    'digit_count',
    'dyadic_mul_truncate',
    'parse_digits',
    'rational_to_dyadic',
    'render_digits',
    'round_output',
    'round_rational',
    'truncate',
]

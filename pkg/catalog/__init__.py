"""Bundled constants, descriptor files and descriptor validation."""

from .constants import (
    DATA_DIR,
    UnknownConstantError,
    available_constants,
    arctan_series,
    exp_series,
    geometric_series,
    get_constant,
    reference_tolerance,
    reference_value,
    zeta3_series,
    zeta3_misprint_series,
)
from .descriptor_io import DescriptorParseError, load_descriptor, save_descriptor
from .validation import CheckResult, ValidationReport, tail_proxy_check, validate_descriptor, validate_formula

__all__ = [
    'DATA_DIR',
    'UnknownConstantError',
    'available_constants',
    'arctan_series',
    'exp_series',
    'geometric_series',
    'get_constant',
    'reference_tolerance',
    'reference_value',
    'zeta3_series',
    'zeta3_misprint_series',
    'DescriptorParseError',
    'load_descriptor',
    'save_descriptor',
    'CheckResult',
    'ValidationReport',
    'tail_proxy_check',
    'validate_descriptor',
    'validate_formula',
]

"""
JSON descriptor files.

Series:
    {"name": str, "prefactor": {"num": str, "den": str},
     "a" | "b" | "p" | "q": {"coeffs": [str, ...], "overrides": [{"index": int, "value": str}, ...]},
     "tail": {"alpha": {"num": str, "den": str}, "beta": int}}

A factorial tail is written {"kind": "factorial", "beta": int}.

Formula:
    {"name": str, "terms": [{"coeff": {"num": str, "den": str}, "series": <series object or relative path>}]}

Integers are decimal strings so coefficients of any size survive.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

from bigfix.backend import decimal_string, parse_decimal
from series.descriptor import (
    ConstantFormula,
    DescriptorError,
    FactorialTailModel,
    SeriesDescriptor,
    Tail,
    TailModel,
)
from series.planner import ConditionViolation, check_conditions, terms_needed
from series.polynomial import Polynomial

Loaded = Union[SeriesDescriptor, ConstantFormula]

DEFAULT_PROBE_BITS = 32


class DescriptorParseError(DescriptorError):
    """Malformed descriptor file; the message names the file and field."""


def _require(doc: Dict[str, Any], key: str, where: str) -> Any:
    if not isinstance(doc, dict):
        raise DescriptorParseError(f"{where}: expected an object")
    if key not in doc:
        raise DescriptorParseError(f"{where}: missing field '{key}'")
    return doc[key]


def _parse_int(value: Any, where: str) -> int:
    if isinstance(value, bool):
        raise DescriptorParseError(f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return parse_decimal(value.strip())
        except ValueError:
            pass
    raise DescriptorParseError(f"{where}: expected an integer, got {value!r}")


def _parse_fraction(doc: Any, where: str) -> Fraction:
    num = _parse_int(_require(doc, 'num', where), f"{where}.num")
    den = _parse_int(_require(doc, 'den', where), f"{where}.den")
    if den == 0:
        raise DescriptorParseError(f"{where}.den: zero denominator")
    return Fraction(num, den)


def _parse_polynomial(doc: Any, where: str) -> Polynomial:
    coeffs = _require(doc, 'coeffs', where)
    if not isinstance(coeffs, list) or not coeffs:
        raise DescriptorParseError(f"{where}.coeffs: expected a non-empty list")

    overrides = doc.get('overrides', [])
    if not isinstance(overrides, list):
        raise DescriptorParseError(f"{where}.overrides: expected a list")

    parsed = []
    for k, item in enumerate(overrides):
        at = f"{where}.overrides[{k}]"
        index = _parse_int(_require(item, 'index', at), f"{at}.index")
        if index < 0:
            raise DescriptorParseError(f"{at}.index: must be non-negative")
        parsed.append((index, _parse_int(_require(item, 'value', at), f"{at}.value")))

    try:
        return Polynomial.build(
            [_parse_int(c, f"{where}.coeffs[{k}]") for k, c in enumerate(coeffs)],
            parsed
        )
    except ValueError as e:
        raise DescriptorParseError(f"{where}: {e}")


def _parse_tail(doc: Any, where: str) -> Tail:
    kind = doc.get('kind', 'linear') if isinstance(doc, dict) else None
    if kind == 'factorial':
        return FactorialTailModel(_parse_int(doc.get('beta', 0), f"{where}.beta"))
    if kind != 'linear':
        raise DescriptorParseError(f"{where}.kind: unknown tail kind {kind!r}")

    try:
        return TailModel(
            _parse_fraction(_require(doc, 'alpha', where), f"{where}.alpha"),
            _parse_int(_require(doc, 'beta', where), f"{where}.beta")
        )
    except ValueError as e:
        if isinstance(e, DescriptorParseError):
            raise
        raise DescriptorParseError(f"{where}: {e}")


def series_from_dict(doc: Dict[str, Any], where: str = 'series') -> SeriesDescriptor:
    name = _require(doc, 'name', where)
    if not isinstance(name, str) or not name:
        raise DescriptorParseError(f"{where}.name: expected a non-empty string")

    prefactor = _parse_fraction(doc['prefactor'], f"{where}.prefactor") if 'prefactor' in doc else Fraction(1)

    return SeriesDescriptor(
        name=name,
        a=_parse_polynomial(_require(doc, 'a', where), f"{where}.a"),
        b=_parse_polynomial(_require(doc, 'b', where), f"{where}.b"),
        p=_parse_polynomial(_require(doc, 'p', where), f"{where}.p"),
        q=_parse_polynomial(_require(doc, 'q', where), f"{where}.q"),
        tail=_parse_tail(_require(doc, 'tail', where), f"{where}.tail"),
        prefactor=prefactor,
    )


def formula_from_dict(doc: Dict[str, Any], base_dir: Path, where: str = 'formula') -> ConstantFormula:
    name = _require(doc, 'name', where)
    terms = _require(doc, 'terms', where)
    if not isinstance(terms, list) or not terms:
        raise DescriptorParseError(f"{where}.terms: expected a non-empty list")

    parsed = []
    for k, item in enumerate(terms):
        at = f"{where}.terms[{k}]"
        coeff = _parse_fraction(_require(item, 'coeff', at), f"{at}.coeff")
        series = _require(item, 'series', at)
        if isinstance(series, str):
            ref = base_dir / series
            loaded = _read_document(ref)
            parsed.append((coeff, series_from_dict(loaded, f"{ref.name}")))
        else:
            parsed.append((coeff, series_from_dict(series, f"{at}.series")))

    return ConstantFormula(name, tuple(parsed))


def _read_document(path: Path) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise DescriptorParseError(f"{path}: cannot read descriptor ({e.strerror})")

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DescriptorParseError(f"{path}:{e.lineno}:{e.colno}: {e.msg}")

    if not isinstance(doc, dict):
        raise DescriptorParseError(f"{path}: top level must be an object")
    return doc


def _probe(series: SeriesDescriptor, probe_bits: int):
    """Conditions over 0..μ(probe_bits) and a tail sanity probe."""
    r = terms_needed(series, probe_bits)
    report = check_conditions(series, r)
    if not report.passed:
        raise ConditionViolation(report, series.name)

    from .validation import tail_proxy_check
    check = tail_proxy_check(series, probe_bits)
    if not check.passed:
        raise DescriptorError(f"{series.name}: {check.detail}")


def load_descriptor(path: Union[str, Path], probe_bits: Optional[int] = DEFAULT_PROBE_BITS) -> Loaded:
    """Parse a series or formula file; probe_bits=None skips the validation probe."""
    path = Path(path)
    doc = _read_document(path)

    if 'terms' in doc:
        loaded: Loaded = formula_from_dict(doc, path.parent, path.name)
        members = loaded.series
    else:
        loaded = series_from_dict(doc, path.name)
        members = (loaded,)

    if probe_bits is not None:
        for series in members:
            _probe(series, probe_bits)
    return loaded


def _fraction_to_dict(value: Fraction) -> Dict[str, str]:
    return {'num': decimal_string(value.numerator), 'den': decimal_string(value.denominator)}


def _polynomial_to_dict(poly: Polynomial) -> Dict[str, Any]:
    return {
        'coeffs': [decimal_string(c) for c in poly.coeffs],
        'overrides': [{'index': i, 'value': decimal_string(v)} for i, v in poly.overrides],
    }


def series_to_dict(series: SeriesDescriptor) -> Dict[str, Any]:
    if isinstance(series.tail, FactorialTailModel):
        tail = {'kind': 'factorial', 'beta': series.tail.beta}
    else:
        tail = {'alpha': _fraction_to_dict(series.tail.alpha), 'beta': series.tail.beta}

    return {
        'name': series.name,
        'prefactor': _fraction_to_dict(series.prefactor),
        'a': _polynomial_to_dict(series.a),
        'b': _polynomial_to_dict(series.b),
        'p': _polynomial_to_dict(series.p),
        'q': _polynomial_to_dict(series.q),
        'tail': tail,
    }


def formula_to_dict(formula: ConstantFormula) -> Dict[str, Any]:
    return {
        'name': formula.name,
        'terms': [
            {'coeff': _fraction_to_dict(coeff), 'series': series_to_dict(series)}
            for coeff, series in formula.terms
        ],
    }


def save_descriptor(item: Loaded, path: Union[str, Path]):
    """Write a series or formula as JSON; load_descriptor reads it back unchanged."""
    doc = formula_to_dict(item) if isinstance(item, ConstantFormula) else series_to_dict(item)
    Path(path).write_text(json.dumps(doc, indent=2) + '\n', encoding='utf-8')

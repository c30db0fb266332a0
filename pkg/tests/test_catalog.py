import json
from fractions import Fraction

import pytest

from catalog.constants import (
    DATA_DIR,
    UnknownConstantError,
    available_constants,
    exp_series,
    geometric_series,
    get_constant,
    reference_tolerance,
    reference_value,
    zeta3_series,
    zeta3_misprint_series,
)
from catalog.descriptor_io import DescriptorParseError, load_descriptor, save_descriptor
from catalog.validation import tail_proxy_check, validate_descriptor, validate_formula
from evaluators.linspace import evaluate_series
from series.descriptor import ConstantFormula, DescriptorError, SeriesDescriptor, TailModel
from series.planner import ConditionViolation
from series.polynomial import Polynomial
from tests.conftest import BUNDLED_SERIES
from tests.oracle import brute_partial_sum


def write_json(path, doc):
    path.write_text(json.dumps(doc), encoding='utf-8')
    return path


def geometric_doc(**overrides):
    doc = json.loads((DATA_DIR / 'geometric.json').read_text(encoding='utf-8'))
    doc.update(overrides)
    return doc


def test_available_constants():
    assert available_constants() == ['e', 'pi', 'zeta3']


def test_e_formula():
    formula = get_constant('e')
    assert len(formula.terms) == 1
    coeff, series = formula.terms[0]
    assert coeff == 1
    assert series.prefactor == 2
    assert brute_partial_sum(series, 0) == Fraction(1, 2)
    # q(j) = j telescopes to 1/i!
    assert brute_partial_sum(series, 3) == Fraction(1, 2) * (1 + 1 + Fraction(1, 2) + Fraction(1, 6))


def test_pi_formula():
    formula = get_constant('pi')
    assert [c for c, _ in formula.terms] == [16, -4]
    assert [s.name for s in formula.series] == ['arctan_1_5', 'arctan_1_239']
    assert formula.series[0].prefactor == Fraction(2, 5)


def test_zeta3_leading_terms():
    series = get_constant('zeta3').series[0]
    assert brute_partial_sum(series, 0) == Fraction(77, 64)
    assert brute_partial_sum(series, 1) == Fraction(149555, 124416)


def test_lookup_is_case_insensitive():
    assert get_constant(' PI ').name == 'pi'


def test_unknown_constant_lists_catalog():
    with pytest.raises(UnknownConstantError, match='e, pi, zeta3'):
        get_constant('nosuch')
    with pytest.raises(LookupError):
        get_constant('ln2')


def test_tight_tail_only_changes_e():
    loose = get_constant('e').series[0].tail.terms(4096)
    tight = get_constant('e', tight_tail=True).series[0].tail.terms(4096)
    assert tight < loose
    assert get_constant('pi', tight_tail=True) == get_constant('pi')


def test_reference_values():
    assert reference_value('nosuch') is None
    assert abs(reference_value('pi') - Fraction(355, 113)) < Fraction(1, 10 ** 6)
    assert reference_tolerance('e') == Fraction(1, 10 ** 50)


def test_geometric_validates():
    report = validate_descriptor(geometric_series(), 32)
    assert report.passed, report.to_dict()
    assert [c.name for c in report.checks] == ['conditions', 'tail', 'agreement']
    assert report.plan.r == 33


def test_probe_bits_minimum():
    with pytest.raises(ValueError):
        validate_descriptor(geometric_series(), 4)


@pytest.mark.parametrize('name', ['e', 'pi', 'zeta3'])
def test_bundled_constants_validate_at_256_bits(name):
    report = validate_formula(get_constant(name), 256, reference_value(name), reference_tolerance(name))
    assert report.passed, report.to_dict()


def test_optimistic_tail_fails_proxy():
    series = geometric_series().with_tail(TailModel(Fraction(0), 0))
    assert not tail_proxy_check(series, 32).passed
    report = validate_descriptor(series, 32)
    assert not report.passed
    assert [c.name for c in report.failures()] == ['tail']


def test_misprinted_zeta3_flagged_by_reference():
    reference = reference_value('zeta3')
    report = validate_descriptor(zeta3_misprint_series(), 32, reference, reference_tolerance('zeta3'))
    checks = {c.name: c.passed for c in report.checks}
    assert checks == {'conditions': True, 'tail': True, 'agreement': True, 'reference': False}

    literal = evaluate_series(zeta3_misprint_series(), 32).to_fraction()
    corrected = evaluate_series(zeta3_series(), 32).to_fraction()
    assert abs(literal - corrected) > Fraction(1, 2 ** 8)
    assert abs(corrected - reference) <= Fraction(1, 2 ** 32)


def test_load_bundled_geometric():
    loaded = load_descriptor(DATA_DIR / 'geometric.json')
    assert isinstance(loaded, SeriesDescriptor)
    assert loaded == geometric_series()


def test_load_formula_with_file_reference():
    loaded = load_descriptor(DATA_DIR / 'machin_pi.json')
    assert isinstance(loaded, ConstantFormula)
    assert loaded.terms == get_constant('pi').terms


def test_load_rejects_small_b(tmp_path):
    doc = geometric_doc(b={'coeffs': ['1'], 'overrides': []})
    with pytest.raises(ConditionViolation, match='b\\(0\\)=1 < 2'):
        load_descriptor(write_json(tmp_path / 'bad_b.json', doc))


def test_load_rejects_zero_q(tmp_path):
    doc = geometric_doc(q={'coeffs': ['0', '1'], 'overrides': []})
    with pytest.raises(DescriptorError, match='q\\(0\\) = 0'):
        load_descriptor(write_json(tmp_path / 'zero_q.json', doc))


def test_load_rejects_optimistic_tail(tmp_path):
    doc = geometric_doc(tail={'alpha': {'num': '0', 'den': '1'}, 'beta': 0})
    with pytest.raises(DescriptorError, match='tail model'):
        load_descriptor(write_json(tmp_path / 'tail.json', doc))


def test_parse_error_names_line(tmp_path):
    path = tmp_path / 'broken.json'
    path.write_text('{\n  "name": "x",\n  "a": \n}\n', encoding='utf-8')
    with pytest.raises(DescriptorParseError, match='broken.json:4:'):
        load_descriptor(path)


def test_parse_error_names_field(tmp_path):
    doc = geometric_doc()
    del doc['q']
    with pytest.raises(DescriptorParseError, match="missing field 'q'"):
        load_descriptor(write_json(tmp_path / 'no_q.json', doc))

    doc = geometric_doc(a={'coeffs': ['1', 'x']})
    with pytest.raises(DescriptorParseError, match='a.coeffs\\[1\\]'):
        load_descriptor(write_json(tmp_path / 'bad_coeff.json', doc))


def test_missing_file():
    with pytest.raises(DescriptorParseError, match='cannot read'):
        load_descriptor(DATA_DIR / 'nope.json')


@pytest.mark.parametrize('item', [
    zeta3_series(),
    exp_series(tight_tail=True),
    get_constant('pi'),
], ids=['zeta3', 'exp_factorial_tail', 'pi_formula'])
def test_save_then_load_is_identical(tmp_path, item):
    path = tmp_path / 'saved.json'
    save_descriptor(item, path)
    assert load_descriptor(path) == item


def test_huge_coefficients_survive(tmp_path):
    big = 3 ** 200
    series = geometric_series().with_tail(TailModel(Fraction(1), 0))
    doc = geometric_doc(a={'coeffs': [str(big)], 'overrides': []})
    loaded = load_descriptor(write_json(tmp_path / 'big.json', doc), probe_bits=None)
    assert loaded.a(0) == big
    assert loaded.q == series.q


def test_coefficients_past_the_int_str_limit(tmp_path):
    big = 10 ** 5000
    series = geometric_series()
    wide = SeriesDescriptor(series.name, Polynomial.build([big]), series.b, series.p, series.q,
                            series.tail, prefactor=Fraction(big + 1, big))
    path = tmp_path / 'wide.json'
    save_descriptor(wide, path)
    assert load_descriptor(path, probe_bits=None) == wide

    doc = geometric_doc(a={'coeffs': ['1' + '0' * 5000], 'overrides': []})
    loaded = load_descriptor(write_json(tmp_path / 'wide_doc.json', doc), probe_bits=None)
    assert loaded.a(0) == big


@pytest.mark.parametrize('name', sorted(BUNDLED_SERIES))
@pytest.mark.parametrize('k', [8, 16, 32, 64])
def test_tail_model_holds_for_bundled_series(name, k):
    result = tail_proxy_check(BUNDLED_SERIES[name](), k)
    assert result.passed, result.detail

from fractions import Fraction

import pytest

from bigfix import backend
from catalog.constants import arctan_series, exp_series, geometric_series, zeta3_series

BUNDLED_SERIES = {
    'geometric': geometric_series,
    'exp1': exp_series,
    'arctan_1_5': lambda: arctan_series(5, Fraction(7, 32)),
    'arctan_1_239': lambda: arctan_series(239, Fraction(1, 15)),
    'zeta3': zeta3_series,
}


@pytest.fixture
def geometric():
    return geometric_series()


@pytest.fixture
def exp1():
    return exp_series()


@pytest.fixture
def zeta3():
    return zeta3_series()


@pytest.fixture(params=sorted(BUNDLED_SERIES))
def bundled_series(request):
    return BUNDLED_SERIES[request.param]()


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep logs in a temp dir and restore the integer backend afterwards."""
    monkeypatch.setenv('HYPERSERIES_LOG_DIR', str(tmp_path / 'logs'))
    monkeypatch.delenv('HYPERSERIES_ASSERT_LEMMA3', raising=False)
    monkeypatch.delenv('HYPERSERIES_ACCOUNTING', raising=False)
    monkeypatch.delenv('HYPERSERIES_BACKEND', raising=False)
    previous = backend._backend
    yield
    backend._backend = previous

import pytest

from deformed.schemes import q_slice
from models.scheme import DeformationScheme, Preset

P, Q = 0.9, 0.5
PARAMS = [(a1, a2) for a1 in (0.2, 0.5, 0.8) for a2 in (0.2, 0.5, 0.8)]


@pytest.fixture
def js():
    return DeformationScheme.from_preset(Preset.JS, P, Q)


@pytest.fixture
def bm():
    return DeformationScheme.from_preset(Preset.BM, P, Q)


@pytest.fixture
def cj():
    return DeformationScheme.from_preset(Preset.CJ, P, Q)


@pytest.fixture
def quesne():
    return DeformationScheme.from_preset(Preset.QUESNE, P, Q)


@pytest.fixture
def classical():
    return DeformationScheme.classical()


@pytest.fixture(params=[Preset.BM, Preset.JS, Preset.CJ, Preset.QUESNE], ids=lambda p: p.value)
def preset_scheme(request):
    return DeformationScheme.from_preset(request.param, P, Q)


@pytest.fixture(params=[Preset.JS, Preset.CJ], ids=lambda p: p.value)
def convergent_scheme(request):
    """Presets with phi2 < phi1, where every family is a proper law"""
    return DeformationScheme.from_preset(request.param, P, Q)


@pytest.fixture
def js_slice(js):
    return q_slice(js)


@pytest.fixture
def params():
    return list(PARAMS)

from pytest import mark, raises

from deformed.errors import DomainError
from models.report import Verdict
from models.scheme import Preset
from verify.audit import WATCHLIST
from verify.specializations import CATALOG, audit_specializations


def test_every_preset_has_displays():
    assert set(CATALOG) == {Preset.BM, Preset.JS, Preset.CJ, Preset.QUESNE}


def test_plain_displays_match_the_general_formulas():
    report = audit_specializations(Preset.JS, n=3)
    assert report.summary()['PASS'] == len(report)
    assert report.suite == 'specializations'
    assert report.tolerances == {'specialization': 1e-10}


@mark.parametrize("preset", [Preset.BM, Preset.CJ, Preset.QUESNE])
def test_findings_stay_inside_the_catalog(preset):
    report = audit_specializations(preset, n=4, params=[(0.4, 0.6), (0.2, 0.5)])
    typos = CATALOG[preset].typos
    for row in report.by_verdict(Verdict.SUSPECTED_TYPO):
        assert row.label.split('(')[0] in typos
        assert row.note == WATCHLIST['printed_specialization']


def test_bm_displays_have_findings():
    report = audit_specializations(Preset.BM, n=4)
    assert report.by_verdict(Verdict.SUSPECTED_TYPO)


def test_custom_scheme_has_no_displays():
    with raises(DomainError):
        audit_specializations(Preset.CUSTOM)

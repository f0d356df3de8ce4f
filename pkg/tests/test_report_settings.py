import math

from models.report import AuditReport, AuditRow, Convention, McResult, Verdict
from models.settings import Settings


def _report(suite, labels, scheme):
    rows = [AuditRow(label, 1.0, 1.0, 0.0, Verdict.PASS) for label in labels]
    return AuditReport(suite, rows, [scheme], [[0.5, 0.5]], {'finite': 1e-9})


def test_row_dict_omits_missing_fields():
    row = AuditRow("tfk1(m1=1)", 1.0, 2.0, 0.5, Verdict.FAIL)
    assert row.to_dict() == {'label': "tfk1(m1=1)", 'closed_form': 1.0, 'oracle': 2.0,
                             'rel_err': 0.5, 'verdict': "FAIL"}
    watched = AuditRow("x", 1.0, 2.0, 0.5, Verdict.SUSPECTED_TYPO, alternate=2.0, note="n")
    assert watched.to_dict()['alternate'] == 2.0
    assert 'alternate_oracle' not in watched.to_dict()


def test_report_round_trip():
    report = _report('theorems', ["a", "b"], {'preset': 'js'})
    report.rows.append(AuditRow("c", math.nan, math.nan, math.inf, Verdict.FAIL, note="bad"))
    restored = AuditReport.from_dict(report.to_dict())
    assert restored.summary() == {'PASS': 2, 'FAIL': 1, 'SUSPECTED_TYPO': 0}
    assert restored.rows[2].note == "bad"
    assert restored.failed
    assert restored.to_dict()['summary'] == report.to_dict()['summary']


def test_report_merge():
    merged = _report('theorems', ["a"], {'preset': 'js'}).merge(
        _report('lemmas', ["b"], {'preset': 'js'}))
    assert merged.suite == 'theorems+lemmas'
    assert [row.label for row in merged.rows] == ["a", "b"]
    assert merged.schemes == [{'preset': 'js'}]
    assert merged.params == [[0.5, 0.5]]
    assert not merged.failed


def test_find_matches_label_prefix():
    report = _report('theorems', ["tfk1(m1=1) js", "tfk4(m1=1,m2=1) js"], {})
    assert len(report.find("tfk1")) == 1


def test_settings_merge_over_defaults():
    settings = Settings.from_dict({'audit': {'max_n': 3, 'unknown': 1},
                                   'output': {'format': 'json'}, 'extra': {}})
    assert settings.audit.max_n == 3
    assert settings.audit.max_order == 2
    assert settings.output.format == 'json'
    assert settings.tolerances.finite == 1e-9
    assert Settings.from_dict(None) == Settings()
    assert Settings.from_dict(settings.to_dict()) == settings


def test_mc_result_dict():
    result = McResult(Convention.TRIAL_INDEX, 1000, 0.01, 3.2, 7, 2, 0.4, 0.5, 4, 0.2)
    data = result.to_dict()
    assert data['convention'] == "trial_index"
    assert data['selected'] is False
    assert data['censored'] == 0

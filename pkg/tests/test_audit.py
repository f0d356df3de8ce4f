import math

from pytest import approx, mark, raises

from deformed.errors import DomainError
from deformed.schemes import q_slice
from models.distribution import DistributionSpec, Family, PmfReading
from models.report import Verdict
from models.settings import ToleranceSettings
from verify.audit import (
    WATCHLIST, AuditGrid, Check, audit_identities, audit_lemmas, audit_spec, audit_theorems,
    normalization_sweep, rel_err, run_check, run_checks,
)

PAIRS = [(0.3, 0.6)]
WIDE_PAIRS = [(0.2, 0.5), (0.8, 0.8)]


def _fails():
    raise DomainError("no inverse")


def _failed_labels(report):
    return [row.label for row in report.by_verdict(Verdict.FAIL)]


def test_rel_err_uses_absolute_floor():
    assert rel_err(1.0, 1.0) == 0.0
    assert rel_err(1.5, 1.0) == approx(0.5)
    assert rel_err(1e-15, 0.0) == approx(0.1)


def test_run_check_verdicts():
    assert run_check(Check("same", 1e-9, lambda: (1.0, 1.0))).verdict == Verdict.PASS
    assert run_check(Check("off", 1e-9, lambda: (1.0, 2.0))).verdict == Verdict.FAIL

    watched = run_check(Check("typo", 1e-9, lambda: (1.0, 2.0), 'carry_over'))
    assert watched.verdict == Verdict.SUSPECTED_TYPO
    assert watched.note == WATCHLIST['carry_over']
    assert watched.alternate is None

    confirmed = run_check(Check("typo", 1e-9, lambda: (1.0, 2.0), 'cov_nt1_sign',
                                lambda: (2.0, 2.0)))
    assert confirmed.verdict == Verdict.SUSPECTED_TYPO
    assert confirmed.alternate == 2.0
    assert confirmed.alternate_rel_err == 0.0

    refuted = run_check(Check("typo", 1e-9, lambda: (1.0, 2.0), 'cov_nt1_sign',
                              lambda: (3.0, 2.0)))
    assert refuted.verdict == Verdict.FAIL
    assert refuted.alternate == 3.0


def test_run_check_turns_errors_into_rows():
    row = run_check(Check("broken", 1e-9, _fails))
    assert row.verdict == Verdict.FAIL
    assert math.isnan(row.closed_form) and math.isinf(row.rel_err)
    assert "DomainError" in row.note

    row = run_check(Check("overflow", 1e-9, lambda: (math.inf, 1.0)))
    assert row.verdict == Verdict.FAIL
    assert "FloatingPointError" in row.note

    row = run_check(Check("typo", 1e-9, lambda: (1.0, 2.0), 'carry_over', _fails))
    assert row.verdict == Verdict.FAIL
    assert "alternate failed" in row.note

    row = run_check(Check("overflow", 1e-9, lambda: (math.exp(1000.0), 1.0)))
    assert row.verdict == Verdict.FAIL
    assert "OverflowError" in row.note


def test_watched_breakdown_is_settled_by_the_alternate():
    row = run_check(Check("diverges", 1e-9, _fails, 'printed_reading', lambda: (1.0, 1.0)))
    assert row.verdict == Verdict.SUSPECTED_TYPO
    assert math.isnan(row.closed_form) and row.alternate == 1.0
    assert row.note.startswith(WATCHLIST['printed_reading'])
    assert "primary failed: DomainError: no inverse" in row.note

    row = run_check(Check("diverges", 1e-9, _fails, 'carry_over'))
    assert row.verdict == Verdict.FAIL
    assert row.note == "DomainError: no inverse"

    row = run_check(Check("diverges", 1e-9, _fails, 'carry_over', _fails))
    assert row.verdict == Verdict.FAIL
    assert "primary failed" in row.note and "alternate failed" in row.note


def test_run_checks_keeps_order_with_workers():
    checks = [Check(f"row{i}", 1e-9, lambda i=i: (float(i), float(i))) for i in range(20)]
    serial = run_checks("demo", checks)
    pooled = run_checks("demo", checks, workers=4)
    assert [row.label for row in pooled.rows] == [row.label for row in serial.rows]
    assert pooled.summary() == {'PASS': 20, 'FAIL': 0, 'SUSPECTED_TYPO': 0}


@mark.parametrize("family", list(Family))
def test_theorems_hold_on_the_slice(js, family):
    report = audit_theorems(q_slice(js), PAIRS, max_n=3, max_order=2, families=[family])
    assert len(report) > 0
    assert not report.failed, [row.label for row in report.by_verdict(Verdict.FAIL)]


def test_slice_findings_are_the_watchlisted_typos(js):
    report = audit_theorems(q_slice(js), PAIRS, max_n=2, max_order=2)
    flagged = {row.label.split('(')[0] for row in report.by_verdict(Verdict.SUSPECTED_TYPO)}
    assert flagged <= {'cov_nt1', 'cov_nt2', 'ntsk5'}
    assert all(row.verdict == Verdict.PASS for row in report.find('cov_nt1(A)'))
    assert all(row.verdict == Verdict.PASS for row in report.find('cov_nt2(B)'))


def test_off_slice_rows_are_carry_over_findings(js):
    report = audit_theorems(js, PAIRS, max_n=2, max_order=1, families=[Family.T1])
    assert not report.failed
    suspected = report.by_verdict(Verdict.SUSPECTED_TYPO)
    assert suspected
    assert all(row.note == WATCHLIST['carry_over'] for row in suspected)
    assert all(row.alternate_rel_err <= 1e-9 for row in suspected)


def test_report_echoes_inputs(js):
    report = audit_theorems(js, PAIRS, max_n=1, max_order=1, families=[Family.T2])
    assert report.suite == 'theorems'
    assert report.schemes == [js.to_dict()]
    assert report.params == [[0.3, 0.6]]
    assert report.tolerances['finite'] == 1e-9


def test_signed_regime_rows_fail_with_reason(bm):
    report = audit_theorems(bm, PAIRS, max_n=2, max_order=1, families=[Family.NT1, Family.NT2])
    failed = report.by_verdict(Verdict.FAIL)
    assert failed
    assert all(row.note for row in report.rows if row.verdict != Verdict.PASS)
    assert all(row.verdict == Verdict.FAIL for row in report.find('ntsk2(m2=1) nt2'))


def test_theorem_suite_has_no_failures(convergent_scheme):
    report = audit_theorems(convergent_scheme, WIDE_PAIRS, max_n=2, max_order=2)
    assert len(report) > 0
    assert not report.failed, _failed_labels(report)


def test_finite_theorems_hold_on_bm(bm):
    report = audit_theorems(bm, [(0.2, 0.8), (0.8, 0.5)], max_n=6, max_order=2,
                            families=[Family.T1, Family.T2])
    assert not report.failed, _failed_labels(report)
    assert report.find('cov_t2() t2') and report.find('tsk4(m2=2) t2')


def test_audit_spec_for_a_single_distribution(js):
    spec = DistributionSpec(Family.T1, q_slice(js), 3, 0.3, 0.6)
    report = audit_spec(spec, max_order=1)
    assert report.suite == 'moments'
    assert report.summary()['PASS'] == len(report)
    cov = audit_spec(spec, max_order=0)
    assert cov.suite == 'cov'
    assert [row.label.split(' ')[0] for row in cov.rows] == ['cov_t1()']


def test_lemmas(js):
    report = audit_lemmas(js, PAIRS, max_n=2, max_order=1)
    assert not report.failed
    stray = report.find('ntskb(m=1,stray)')
    assert stray and all(row.verdict == Verdict.SUSPECTED_TYPO for row in stray)
    for row in report.find("ntska") + report.find("ntfka"):
        assert row.verdict == Verdict.PASS or row.alternate_rel_err <= 1e-8


def test_lemma_suite_has_no_failures(convergent_scheme):
    report = audit_lemmas(convergent_scheme, WIDE_PAIRS, max_n=3, max_order=2)
    assert not report.failed, _failed_labels(report)


def test_divergent_printed_lemma_is_a_finding(cj):
    report = audit_lemmas(cj, [(0.8, 0.8)], max_n=6, max_order=1)
    assert not report.failed, _failed_labels(report)
    row = next(r for r in report.find('ntska(alpha=0.8)') if ',n=6,' in r.label)
    assert row.verdict == Verdict.SUSPECTED_TYPO
    assert "primary failed: TruncationError" in row.note
    assert row.alternate_oracle == approx(1.0, abs=1e-8)


def test_lemma_rows_on_bm_fail_with_reasons(bm):
    report = audit_lemmas(bm, [(0.5, 0.5)], max_n=2, max_order=1)
    assert all(row.note for row in report.rows if row.verdict != Verdict.PASS)
    signed = [r for r in report.find('ntska') if ',n=2,' in r.label]
    assert signed and all(row.verdict == Verdict.FAIL for row in signed)


def test_identities_hold(js, cj, classical):
    report = audit_identities([js, cj, classical], max_n=8, max_order=3)
    assert report.summary()['PASS'] == len(report)


def test_identity_suite_has_no_failures(js, cj, bm):
    report = audit_identities([js, cj, bm], max_n=6, max_order=3)
    assert report.summary()['PASS'] == len(report), _failed_labels(report)
    betas = {row.label.split('beta=')[1].split(')')[0] for row in report.find('splitting')}
    assert betas == {'0.2', '0.5', '0.8'}
    assert report.find('identity_c(n=1,w=12,m=1)')


def test_quesne_inverse_relations_are_findings(quesne):
    report = audit_identities([quesne], max_n=4, max_order=2)
    row = report.find('inverse_number(x=1)')[0]
    assert row.verdict == Verdict.SUSPECTED_TYPO
    assert row.note == WATCHLIST['quesne_inverse']
    assert row.alternate == approx(1.0)
    assert all(r.verdict == Verdict.PASS for r in report.find("binomial_formula"))


def test_normalization_sweep(js, bm):
    grid = AuditGrid([js], ns=[1, 2, 3], params=PAIRS)
    report = normalization_sweep(grid)
    assert report.summary()['PASS'] == len(report) == 12

    signed = normalization_sweep(AuditGrid([bm], ns=[2], params=[(0.5, 0.5)],
                                           families=[Family.T2, Family.NT1]))
    t2_row, nt1_row = signed.rows
    assert t2_row.verdict == Verdict.PASS and t2_row.note == "signed weights"
    assert nt1_row.verdict == Verdict.FAIL and nt1_row.note


def test_normalization_suite_has_no_failures(convergent_scheme):
    grid = AuditGrid([convergent_scheme], ns=[1, 2, 3], params=WIDE_PAIRS)
    report = normalization_sweep(grid)
    assert report.summary()['PASS'] == len(report) == 24


def test_signed_normalization_on_bm(bm):
    grid = AuditGrid([bm], ns=[2, 5, 8, 10], params=[(0.2, 0.8), (0.8, 0.5)],
                     families=[Family.T1, Family.T2])
    report = normalization_sweep(grid)
    assert report.summary()['PASS'] == len(report) == 16
    assert all(row.rel_err <= 1e-12 for row in report.rows)
    signed = [row for row in report.rows if row.note == "signed weights"]
    assert len(signed) >= 6
    assert all(row.label.startswith('mass(normalized) t2[') for row in signed)


def test_printed_normalization_is_a_finding_off_the_slice(js):
    grid = AuditGrid([js], ns=[2], params=[(0.5, 0.5)], families=[Family.T2])
    row = normalization_sweep(grid, PmfReading.PRINTED).rows[0]
    assert row.verdict == Verdict.SUSPECTED_TYPO
    assert row.oracle != approx(1.0)
    assert row.alternate_oracle == approx(1.0)


def test_tolerances_are_configurable(js):
    loose = ToleranceSettings(finite=1.0)
    report = audit_theorems(js, PAIRS, max_n=2, max_order=1, families=[Family.T1],
                            tolerances=loose)
    assert report.tolerances["finite"] == 1.0


def test_unknown_family_is_rejected(js):
    with raises(ValueError):
        audit_theorems(js, PAIRS, max_n=1, families=['t3'])

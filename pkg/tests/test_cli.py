import io
import json

from pytest import approx, raises

from cli.controller import (
    EXIT_INVALID, EXIT_OK, EXIT_STRICT, EXIT_TRUNCATION, FORMAT_ENV, CliController, parse_args,
)
from cli.output import format_number, parse_csv
from main import main
from models.settings import AuditSettings, Settings

PMF_T1 = ["pmf", "--scheme", "js", "--p", "0.9", "--q", "0.5", "--family", "t1",
          "--n", "1", "--a1", "0.5", "--a2", "0.5"]


def run(argv, settings=None, environ=None):
    stdout, stderr = io.StringIO(), io.StringIO()
    controller = CliController(settings, stdout, stderr, {} if environ is None else environ)
    status = controller.run(parse_args(argv))
    return status, stdout.getvalue(), stderr.getvalue()


def test_pmf_csv():
    status, out, _ = run(PMF_T1)
    assert status == EXIT_OK
    assert len(out.splitlines()) == 4
    metadata, rows = parse_csv(out)
    assert metadata == {}
    assert rows[0] == {'y1': '0', 'y2': '0', 'prob': rows[0]['prob']}
    assert float(rows[0]['prob']) == approx(1 / 2.25)


def test_pmf_json_carries_the_csv_numbers():
    _, csv_out, _ = run(PMF_T1)
    _, json_out, _ = run(PMF_T1 + ["--format", "json"])
    _, rows = parse_csv(csv_out)
    entries = json.loads(json_out)['entries']
    assert [float(row['prob']) for row in rows] == [entry['prob'] for entry in entries]


def test_format_falls_back_to_the_environment():
    _, out, _ = run(PMF_T1, environ={FORMAT_ENV: "json"})
    assert json.loads(out)['spec']['family'] == "t1"


def test_negative_pmf_has_truncation_header():
    status, out, _ = run(["pmf", "--scheme", "js", "--family", "nt1", "--n", "2"])
    assert status == EXIT_OK
    metadata, rows = parse_csv(out)
    assert metadata['truncated'] == "true"
    assert metadata['tail_tol'] == format_number(1e-8)
    assert sum(float(row['prob']) for row in rows) == approx(1.0, abs=1e-7)


def test_invalid_arguments():
    status, _, err = run(PMF_T1[:-4] + ["--a1", "1.5", "--a2", "0.5"])
    assert status == EXIT_INVALID
    assert "a1" in err
    assert run(["pmf", "--scheme", "custom", "--family", "t1"])[0] == EXIT_INVALID
    assert run(["pmf", "--scheme", "js"])[0] == EXIT_INVALID
    assert run(["pmf", "--scheme", "js", "--family", "t3"])[0] == EXIT_INVALID
    assert run(["pmf", "--scheme", "js", "--family", "t1", "--phi1", "1"])[0] == EXIT_INVALID


def test_domain_errors_exit_invalid():
    status, _, err = run(["pmf", "--scheme", "js", "--p", "0.5", "--q", "0.9",
                          "--family", "t1"])
    assert status == EXIT_INVALID
    assert err


def test_support_cap_exits_with_truncation_status():
    status, out, err = run(["pmf", "--scheme", "js", "--family", "nt1", "--n", "2",
                            "--max-support", "4"])
    assert status == EXIT_TRUNCATION
    assert out == ""
    assert "truncation" in err


def test_moments_and_cov():
    status, out, _ = run(["moments", "--scheme", "js", "--family", "t2", "--n", "2"])
    assert status == EXIT_OK
    _, rows = parse_csv(out)
    assert [row['label'] for row in rows][-1] == "cov_t2()"
    assert len(rows) == 4

    status, out, _ = run(["cov", "--scheme", "js", "--family", "nt1", "--n", "1",
                          "--a1", "0.3", "--a2", "0.6", "--format", "json"])
    payload = json.loads(out)
    assert payload['closed_forms'][0]['closed_form'] == approx(0.4 * 0.3 * 0.6)


def test_verified_moments_on_the_slice():
    status, out, _ = run(["moments", "--scheme", "custom", "--phi1", "1", "--phi2", "0.5",
                          "--D", "0.5", "--family", "t1", "--n", "3", "--m1", "2",
                          "--verify", "--strict", "--format", "json"])
    assert status == EXIT_OK
    report = json.loads(out)
    assert report['suite'] == 'moments'
    assert report['summary']['FAIL'] == 0


def test_verify_needs_an_inversion_rule():
    status, _, err = run(["moments", "--scheme", "custom", "--phi1", "1", "--phi2", "0.5",
                          "--family", "nt1", "--verify"])
    assert status == EXIT_INVALID
    assert "--inversion" in err


def test_specialization_audit_reports_findings():
    status, out, _ = run(["audit", "--suite", "specializations", "--scheme", "bm",
                          "--format", "json"])
    assert status == EXIT_OK
    assert "SUSPECTED_TYPO" in out


def test_strict_audit_exits_on_failures():
    settings = Settings(audit=AuditSettings(max_n=2, params=[0.5]))
    argv = ["audit", "--suite", "normalization", "--scheme", "bm", "--family", "nt1"]
    status, out, _ = run(argv, settings)
    assert status == EXIT_OK
    metadata, rows = parse_csv(out)
    assert metadata == {'suite': 'normalization'}
    assert {row['verdict'] for row in rows} == {"FAIL"}
    status, _, err = run(argv + ["--strict"], settings)
    assert status == EXIT_STRICT
    assert "failed" in err


def test_mc_check():
    status, out, _ = run(["mc-check", "--scheme", "js", "--n", "3", "--a1", "0.4",
                          "--samples", "20000", "--seed", "5", "--format", "json"])
    assert status == EXIT_OK
    results = json.loads(out)['results']
    assert [r['convention'] for r in results] == ["trial_index", "failure_count"]
    assert sum(r['selected'] for r in results) == 1


def test_sample_to_file(tmp_path):
    target = tmp_path / "draws.csv"
    status, out, _ = run(["sample", "--scheme", "cj", "--family", "t1", "--n", "3",
                          "--samples", "25", "--seed", "3", "--out", str(target)])
    assert status == EXIT_OK
    assert out == ""
    metadata, rows = parse_csv(target.read_text())
    assert metadata['seed'] == "3"
    assert len(rows) == 25


def test_main_runs_without_a_config_file(tmp_path, capsys):
    status = main(PMF_T1 + ["--config", str(tmp_path / "missing.yaml")])
    captured = capsys.readouterr()
    assert status == EXIT_OK
    assert "not found" in captured.err
    assert len(captured.out.splitlines()) == 4


def test_main_rejects_a_broken_config(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text("audit: [unclosed\n")
    with raises(SystemExit) as info:
        main(PMF_T1 + ["--config", str(config)])
    assert info.value.code == EXIT_INVALID


def test_main_usage_errors(capsys):
    assert main(["pmf", "--n", "two"]) == EXIT_INVALID
    assert main([]) == EXIT_INVALID
    assert "error:" in capsys.readouterr().err

import json

import pytest

from qclutch.cli import main
from qclutch.homotopy import tail_bound
from qclutch.suites import (
    SCHEMA,
    ConfigError,
    SuiteConfig,
    checks_for,
    emit_report,
    run_suite,
)


@pytest.mark.slow
def test_homotopy_suite_default_grid():
    r = run_suite("homotopy")
    grid = [c for c in r.checks if c.name.startswith("homotopy.grid[")]
    assert len(grid) == 33
    assert not r.failed


def test_milnor_suite_small_M():
    r = run_suite("milnor", SuiteConfig(fourier_m=8))
    c = next(c for c in r.checks if c.name == "milnor.compat_defect")
    assert c.status == "PASS"
    assert c.threshold == pytest.approx(2 * tail_bound(8))


def test_exact_mode_skips_float_checks():
    r = run_suite("algebra-laws", SuiteConfig(scalar="exact"))
    assert all(c.status == "PASS" for c in r.checks)
    names = {c.name for c in checks_for("full") if c.mode == "FLOAT"}
    r = run_suite("milnor", SuiteConfig(scalar="exact"))
    for c in r.checks:
        assert c.status == ("SKIP" if c.name in names else "PASS")


@pytest.fixture(scope="module")
def hopf_report():
    return run_suite("hopf")


def test_json_roundtrip(hopf_report, tmp_path):
    text = emit_report(hopf_report, "json")
    data = json.loads(text)
    assert data["schema"] == SCHEMA
    assert data == hopf_report.to_json()
    out = tmp_path / "r.json"
    emit_report(hopf_report, "json", out)
    assert json.loads(out.read_text()) == data


def test_report_deterministic_apart_from_timestamp():
    def text():
        data = run_suite("pullback", SuiteConfig(seed=7)).to_json()
        data.pop("timestamp")
        return json.dumps(data, sort_keys=True)

    assert text() == text()


def test_markdown_one_row_per_check(hopf_report):
    text = emit_report(hopf_report, "md")
    rows = [line for line in text.splitlines() if line.startswith("| hopf.")]
    assert len(rows) == len(hopf_report.checks)


def test_bad_format(hopf_report):
    with pytest.raises(ConfigError):
        emit_report(hopf_report, "xml")


@pytest.mark.parametrize("kw", [dict(fourier_m=3), dict(q="3"), dict(q="a/b"), dict(scalar="int"), dict(jobs=0),
                                dict(t_steps=1), dict(margin=-1), dict(tol=0)])
def test_config_errors(kw):
    with pytest.raises(ConfigError):
        SuiteConfig(**kw)


def test_cli_stdout_and_exit(capsys):
    assert main(["--suite", "hopf"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["suite"] == "hopf" and data["summary"]["FAIL"] == 0


def test_cli_out_file(tmp_path, capsys):
    out = tmp_path / "r.md"
    assert main(["--suite", "hopf", "--report-format", "md", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text().startswith("# Verification report: hopf")


def test_cli_config_errors(capsys):
    assert main(["--suite", "hopf", "--q", "3"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "nope"])
    assert exc.value.code == 2


def test_cli_list(capsys):
    assert main(["--list"]) == 0
    cat = json.loads(capsys.readouterr().out)
    assert any(d["name"] == "CP2T" for d in cat["diagrams"])


def test_cli_failure_exit(monkeypatch, capsys):
    from qclutch import suites

    def broken(cfg, rng):
        return False, 1.0, 0.0, {}

    fake = suites.Check("hopf.broken", "hopf", "EXACT", "always fails", broken)
    monkeypatch.setattr(suites, "_CHECKS", suites._CHECKS + [fake])
    assert main(["--suite", "hopf"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert data["summary"]["FAIL"] == 1

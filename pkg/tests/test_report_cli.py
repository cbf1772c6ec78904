import json
import math

import numpy as np
import pytest

from aptrig import (ConfigError, RunConfig, emit_csv, emit_plots, run_suite,
                    save_signal)
from aptrig.cli import main
from aptrig.fixtures import random_signal, uniform_spectrum
from aptrig.report import CSV_COLUMNS


def test_config_parsing_and_validation(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({
        "signals": ["builtin:probe"],
        "suites": ["inverse"],
        "alpha": 2.0,
        "seed": 7,
    }))
    cfg = RunConfig.from_file(path)
    assert cfg.signals == ("builtin:probe",)
    assert cfg.seed == 7

    path.write_text("{not json")
    with pytest.raises(ConfigError):
        RunConfig.from_file(path)
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"suites": ["bogus"]})
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"unknown_key": 1})
    with pytest.raises(ConfigError):
        RunConfig.from_dict({"schema_version": 99})


def test_empty_signal_list_gives_empty_passing_report(tmp_path):
    cfg = RunConfig(signals=(), suites=("direct_weighted",))
    report = run_suite(cfg)
    assert report.certificates == []
    assert report.all_passed
    csv_path = emit_csv(report, tmp_path / "report.csv")
    assert csv_path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_corrupted_signal_recorded_as_warning(tmp_path):
    bad = tmp_path / "bad.sig"
    bad.write_text("not a signal\n")
    cfg = RunConfig(signals=(str(bad), "builtin:probe"), suites=("inverse",))
    report = run_suite(cfg)
    assert len(report.errors) == 1
    assert report.summary()["warnings"] == 1
    assert any(c.signal == "builtin:probe" for c in report.certificates)
    assert report.all_passed


def test_theorem_suite_on_extremal_fixture_reaches_equality():
    cfg = RunConfig(signals=("builtin:extremal",), suites=("direct_weighted",), n=5)
    report = run_suite(cfg)
    rows = {c.theorem: c for c in report.certificates}
    assert rows["direct_weighted_integral"].passed
    assert abs(rows["direct_weighted_integral"].margin) <= 1e-6
    assert report.all_passed


def test_report_csv_is_deterministic_and_sorted(tmp_path):
    cfg = RunConfig(signals=("builtin:extremal", "builtin:random1"),
                    suites=("direct_uniform", "inverse"), seed=99)
    a = emit_csv(run_suite(cfg), tmp_path / "a.csv").read_bytes()
    b = emit_csv(run_suite(cfg), tmp_path / "b.csv").read_bytes()
    assert a == b
    lines = a.decode().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert b"\r" not in a
    keys = []
    for line in lines[1:]:
        parts = line.split(",")
        keys.append((parts[0], parts[2], int(parts[5]), parts[1]))
    assert keys == sorted(keys)


def test_report_csv_17_digit_floats(tmp_path):
    cfg = RunConfig(signals=("builtin:random1",), suites=("inverse",))
    text = emit_csv(run_suite(cfg), tmp_path / "r.csv").read_text()
    row = text.splitlines()[1].split(",")
    lhs = float(row[6])
    assert f"{lhs:.17g}" == row[6]


def test_sharpness_suite_rows_monotone_and_final_close():
    cfg = RunConfig(signals=(), suites=("sharpness",),
                    sharpness_orders=(2, 5, 10, 100, 500))
    report = run_suite(cfg)
    ratios = [c.lhs for c in report.certificates
              if c.theorem == "inverse_sharpness_ratio"]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    limit = [c for c in report.certificates
             if c.theorem == "inverse_sharpness_limit"]
    assert len(limit) == 1 and limit[0].passed
    assert report.all_passed


def test_sharpness_suite_can_fail_and_drive_exit_code(tmp_path):
    # orders that stop early leave the final ratio under 1 - 1e-3
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({
        "signals": [], "suites": ["sharpness"], "sharpness_orders": [2, 4],
        "outdir": str(tmp_path / "out"),
    }))
    code = main(["verify-all", "--config", str(cfg_path)])
    assert code == 1


def test_plots_deterministic_and_present(tmp_path):
    cfg = RunConfig(signals=("builtin:probe",), suites=("inverse", "sharpness"),
                    plots=True)
    report = run_suite(cfg)
    files_a = emit_plots(report, tmp_path / "a")
    files_b = emit_plots(report, tmp_path / "b")
    assert [f.name for f in files_a] == [f.name for f in files_b]
    for fa, fb in zip(files_a, files_b):
        assert fa.read_bytes() == fb.read_bytes()
        assert fa.stat().st_size > 0
    names = {f.name for f in files_a}
    assert "sharpness_ratio.svg" in names
    assert any(n.startswith("decay_") for n in names)


def test_probe_decay_series_steps_at_cut():
    cfg = RunConfig(signals=("builtin:probe",), suites=("inverse",), plots=True)
    report = run_suite(cfg)
    decay = next(s for s in report.series if s.kind == "decay")
    # builtin probe sits at index 2: tail norms are 1, 1, then 0
    assert decay.y[0] == pytest.approx(1.0)
    assert decay.y[1] == pytest.approx(1.0)
    assert decay.y[2] == pytest.approx(0.0, abs=1e-12)


def test_cli_norm_and_bestapprox(tmp_path, capsys):
    rng = np.random.default_rng(0)
    f = random_signal(uniform_spectrum(5), rng)
    sig = tmp_path / "f.sig"
    save_signal(f, sig)
    assert main(["norm", "--signal", str(sig), "--family", "p:2"]) == 0
    out = capsys.readouterr().out.strip()
    power = math.sqrt(sum(abs(a) ** 2 for a in f.coeffs.values()))
    assert float(out) == pytest.approx(power, rel=1e-8)

    assert main(["bestapprox", "--signal", str(sig), "--profile",
                 str(tmp_path / "profile.csv")]) == 0
    lines = (tmp_path / "profile.csv").read_text().splitlines()
    assert lines[0] == "n,lambda_n,E"


def test_cli_jackson_and_inverse_exit_zero(capsys):
    assert main(["jackson", "--signal", "builtin:extremal", "--n", "5"]) == 0
    assert main(["inverse", "--signal", "builtin:random1", "--alpha", "2.0"]) == 0
    assert main(["inverse", "--signal", "builtin:probe", "--scan", "1"]) == 0
    capsys.readouterr()


def test_cli_modulus_and_classes(capsys):
    assert main(["modulus", "--signal", "builtin:random1",
                 "--phi", "sine_power:2.0", "--delta", "0.5"]) == 0
    assert main(["classes", "--signal", "builtin:decay",
                 "--majorant", "power:1.5", "--alpha", "2.0",
                 "--n-max", "12"]) == 0
    out = capsys.readouterr().out
    assert "power-majorant class" in out


def test_cli_error_paths_exit_two(tmp_path, capsys):
    assert main(["norm", "--signal", str(tmp_path / "missing.sig")]) == 2
    bad_cfg = tmp_path / "bad.json"
    bad_cfg.write_text("{]")
    assert main(["verify-all", "--config", str(bad_cfg)]) == 2
    capsys.readouterr()


def test_cli_verify_all_writes_report(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "signals": ["builtin:extremal"],
        "suites": ["direct_weighted", "direct_uniform"],
        "n": 5,
    }))
    monkeypatch.setenv("APTRIG_OUTDIR", str(tmp_path / "env_out"))
    assert main(["verify-all", "--config", str(cfg)]) == 0
    assert (tmp_path / "env_out" / "report.csv").exists()
    out = capsys.readouterr().out
    assert "failed=0" in out

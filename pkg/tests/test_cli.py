import os

import numpy as np
import pytest

from twofluid import cli


def _run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def _kv(stdout):
    pairs = {}
    for line in stdout.splitlines():
        if "=" in line:
            key, _, val = line.partition("=")
            pairs[key] = val
    return pairs


def test_run_subcommand(tmp_path, capsys):
    out = str(tmp_path / "mms-run")
    code, stdout, _ = _run(capsys, [
        "run", "--case", "mms", "--n", "12", "--dt", "0.05",
        "--tend", "0.5", "--integrator", "rk3", "--out", out])
    assert code == 0
    kv = _kv(stdout)
    assert kv["case"] == "mms"
    assert kv["steps"] == "10"
    assert float(kv["t_final"]) == pytest.approx(0.5, abs=1e-12)
    assert float(kv["c0_inf"]) < 1e-11
    assert os.path.exists(os.path.join(out, "fields.csv"))
    assert os.path.exists(os.path.join(out, "monitor.csv"))
    # config echo records the merged settings
    with open(os.path.join(out, "config.txt")) as fh:
        cfg = _kv(fh.read())
    assert cfg["case"] == "mms"
    assert cfg["integrator"] == "rk3"
    assert cfg["drift_correction"] == "1"


def test_run_requires_case_and_step(capsys):
    with pytest.raises(SystemExit):
        cli.main(["run", "--dt", "0.1"])
    with pytest.raises(SystemExit):
        cli.main(["run", "--case", "mms"])


def test_run_config_file_with_flag_override(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    out = str(tmp_path / "out")
    cfgfile.write_text(
        "# comment line\n"
        "case = mms\n"
        "dt = 0.05\n"
        "tend = 0.25\n"
        "integrator = rk2\n")
    code, stdout, _ = _run(capsys, [
        "run", "--config", str(cfgfile), "--integrator", "rk4",
        "--n", "10", "--out", out])
    assert code == 0
    with open(os.path.join(out, "config.txt")) as fh:
        cfg = _kv(fh.read())
    assert cfg["integrator"] == "rk4"      # flag beats file
    assert cfg["dt"] == "0.05"             # file fills the rest
    assert cfg["tend"] == "0.25"


def test_config_file_rejects_unknown_key(tmp_path):
    cfgfile = tmp_path / "bad.cfg"
    cfgfile.write_text("case=mms\nwarp_drive=1\n")
    with pytest.raises(SystemExit):
        cli.main(["run", "--config", str(cfgfile), "--dt", "0.1"])


def test_out_root_env_var(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv(cli.OUT_ROOT_ENV, str(tmp_path / "root"))
    code, stdout, _ = _run(capsys, [
        "run", "--case", "mms", "--n", "10", "--dt", "0.05",
        "--tend", "0.25"])
    assert code == 0
    assert os.path.exists(str(tmp_path / "root" / "mms" / "fields.csv"))


def test_convergence_subcommand(tmp_path, capsys):
    out = str(tmp_path / "conv")
    code, stdout, _ = _run(capsys, [
        "convergence", "--case", "mms", "--n", "10", "--tend", "0.5",
        "--integrators", "rk2,rk3", "--dts", "0.05,0.025",
        "--ref", "analytic", "--out", out])
    assert code == 0
    kv = _kv(stdout)
    assert "slope.rk2.u_l" in kv and "slope.rk3.p" in kv
    assert os.path.exists(os.path.join(out, "errors.csv"))
    assert os.path.exists(os.path.join(out, "slopes.csv"))


def test_convergence_requires_dts(capsys):
    with pytest.raises(SystemExit):
        cli.main(["convergence", "--case", "mms"])


def test_convergence_bad_ref(capsys):
    with pytest.raises(SystemExit):
        cli.main(["convergence", "--case", "mms", "--dts", "0.05",
                  "--ref", "rk4"])


def test_dispersion_subcommand(capsys):
    code, stdout, _ = _run(capsys, ["dispersion", "--k",
                                    str(2.0 * np.pi)])
    assert code == 0
    kv = _kv(stdout)
    assert float(kv["omega1_real"]) == pytest.approx(3.22, rel=0.02)
    assert float(kv["omega1_imag"]) == pytest.approx(2.00, rel=0.02)
    assert float(kv["omega2_real"]) == pytest.approx(10.26, rel=0.02)
    assert float(kv["omega2_imag"]) == pytest.approx(-1.61, rel=0.02)


def test_dispersion_rejects_other_cases(capsys):
    with pytest.raises(SystemExit):
        cli.main(["dispersion", "--case", "sloshing", "--k", "6.28"])


def test_tableau_subcommand(capsys):
    code, stdout, _ = _run(capsys, ["tableau", "--name", "rk3"])
    assert code == 0
    kv = _kv(stdout)
    assert kv["classical"] == "PASS"
    assert kv["dae_extra"] == "PASS"
    assert kv["all"] == "PASS"
    assert float(kv["dae_extra_value"]) == pytest.approx(2.0 / 3.0,
                                                         abs=1e-14)

    code, stdout, _ = _run(capsys, ["tableau", "--name", "rk3-ssp"])
    kv = _kv(stdout)
    assert kv["classical"] == "PASS" and kv["dae_extra"] == "FAIL"
    assert kv["all"] == "FAIL"


def test_unknown_integrator_reports_error(capsys):
    code, stdout, err = _run(capsys, ["tableau", "--name", "rk99"])
    assert code == 1
    assert "error:" in err

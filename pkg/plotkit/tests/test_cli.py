import pytest

from plotkit import cli


def test_cli_convergence(errors_csv, tmp_path, capsys):
    out = tmp_path / "conv.pdf"
    assert cli.main(["convergence", "--in", errors_csv,
                     "--out", str(out)]) == 0
    assert out.exists() and out.stat().st_size > 0


def test_cli_spacetime_and_monitor(fields_csv, monitor_csv, tmp_path):
    st = tmp_path / "st.svg"
    mon = tmp_path / "mon.svg"
    assert cli.main(["spacetime", "--in", fields_csv,
                     "--out", str(st)]) == 0
    assert cli.main(["monitor", "--in", monitor_csv,
                     "--out", str(mon)]) == 0
    assert st.exists() and mon.exists()


def test_cli_unknown_kind_is_usage_error(errors_csv, tmp_path):
    with pytest.raises(SystemExit):
        cli.main(["volumetric", "--in", errors_csv,
                  "--out", str(tmp_path / "x.pdf")])


def test_cli_missing_arguments(errors_csv):
    with pytest.raises(SystemExit):
        cli.main(["convergence", "--in", errors_csv])


def test_cli_schema_mismatch_exit_code(monitor_csv, tmp_path, capsys):
    out = tmp_path / "x.pdf"
    assert cli.main(["convergence", "--in", monitor_csv,
                     "--out", str(out)]) == 1
    assert "error:" in capsys.readouterr().err
    assert not out.exists()


def test_cli_missing_input_exit_code(tmp_path, capsys):
    assert cli.main(["monitor", "--in", str(tmp_path / "nope.csv"),
                     "--out", str(tmp_path / "x.pdf")]) == 1
    assert "error:" in capsys.readouterr().err


def test_end_to_end_with_simulator_csvs(tmp_path):
    """Figures from real simulator output, when the simulator is present."""
    pytest.importorskip("twofluid")
    from twofluid.harness import RunConfig, convergence, run

    conv_dir = tmp_path / "conv"
    convergence("mms", {"rk2": [0.1, 0.05]}, "analytic", n=8, t_end=0.3,
                out_dir=str(conv_dir))
    assert cli.main(["convergence", "--in", str(conv_dir / "errors.csv"),
                     "--out", str(tmp_path / "conv.pdf")]) == 0

    run_dir = tmp_path / "slosh"
    run(RunConfig(case="sloshing", n=12, dt=0.02, t_end=0.4,
                  out_dir=str(run_dir), cadence=5))
    assert cli.main(["spacetime", "--in", str(run_dir / "fields.csv"),
                     "--out", str(tmp_path / "st.pdf")]) == 0
    assert cli.main(["monitor", "--in", str(run_dir / "monitor.csv"),
                     "--out", str(tmp_path / "mon.pdf")]) == 0
    for name in ("conv.pdf", "st.pdf", "mon.pdf"):
        assert (tmp_path / name).stat().st_size > 0

import os

import pytest

from plotkit import (SchemaError, plot_convergence, plot_monitor,
                     plot_spacetime)


def _check_vector_file(path):
    assert os.path.exists(path) and os.path.getsize(path) > 0
    with open(path, "rb") as fh:
        head = fh.read(5)
    if str(path).endswith(".pdf"):
        assert head == b"%PDF-"
    else:
        assert head == b"<?xml"


def test_convergence_four_panel(errors_csv, tmp_path):
    out = tmp_path / "conv.pdf"
    plot_convergence(errors_csv, out)
    _check_vector_file(out)


def test_convergence_single_series(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text("integrator,dt,component,error\n"
                    "rk4,0.1,u_l,1e-3\nrk4,0.05,u_l,6.25e-5\n")
    out = tmp_path / "single.svg"
    plot_convergence(str(path), out)
    _check_vector_file(out)


def test_convergence_empty_table_writes_nothing(tmp_path):
    path = tmp_path / "e.csv"
    path.write_text("integrator,dt,component,error\n")
    out = tmp_path / "conv.pdf"
    with pytest.raises(SchemaError):
        plot_convergence(str(path), out)
    assert not out.exists()


def test_convergence_schema_mismatch(fields_csv, tmp_path):
    with pytest.raises(SchemaError):
        plot_convergence(fields_csv, tmp_path / "x.pdf")


def test_spacetime(fields_csv, tmp_path):
    out = tmp_path / "st.pdf"
    plot_spacetime(fields_csv, out)
    _check_vector_file(out)


def test_spacetime_ragged_grid_rejected(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("t,s,alpha_l,u_g,u_l,p\n"
                    "0.0,0.5,0.5,1.0,0.2,10.0\n"
                    "0.0,1.5,0.5,1.0,0.2,10.0\n"
                    "1.0,0.5,0.5,1.0,0.2,10.0\n")
    with pytest.raises(SchemaError):
        plot_spacetime(str(path), tmp_path / "x.pdf")


def test_monitor_handles_zero_and_negative_entries(monitor_csv, tmp_path):
    out = tmp_path / "mon.svg"
    plot_monitor(monitor_csv, out)
    _check_vector_file(out)


def test_missing_file_raises_oserror(tmp_path):
    with pytest.raises(OSError):
        plot_monitor(str(tmp_path / "nope.csv"), tmp_path / "x.pdf")


def test_svg_output_is_deterministic(errors_csv, tmp_path):
    outs = []
    for name in ("a.svg", "b.svg"):
        out = tmp_path / name
        plot_convergence(errors_csv, out)
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

import pytest

ERRORS_HEADER = "integrator,dt,component,error"
FIELDS_HEADER = "t,s,alpha_l,u_g,u_l,p"
MONITOR_HEADER = "t,c0_inf,c1_inf,mass_g_err,mass_l_err"


@pytest.fixture
def errors_csv(tmp_path):
    lines = [ERRORS_HEADER]
    for integ, order in (("rk2", 2), ("rk3", 3), ("rk4", 4)):
        for dt in (0.04, 0.02, 0.01, 0.005):
            for comp in ("alpha_l", "u_g", "u_l", "p"):
                lines.append(f"{integ},{dt},{comp},{3.0 * dt ** order!r}")
    path = tmp_path / "errors.csv"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def fields_csv(tmp_path):
    lines = [FIELDS_HEADER]
    for i in range(3):                       # snapshot times
        for j in range(8):                   # cells
            t, s = 0.5 * i, 0.25 + 0.5 * j
            lines.append(f"{t},{s},{0.5 + 0.01 * i * j},"
                         f"{1.0 + 0.1 * j},{0.2 * i},{100.0 * j}")
    path = tmp_path / "fields.csv"
    path.write_text("\n".join(lines) + "\n")
    return str(path)


@pytest.fixture
def monitor_csv(tmp_path):
    lines = [MONITOR_HEADER]
    for k in range(25):
        lines.append(f"{0.02 * k},{1e-14 * (1 + k)},{2e-13},"
                     f"{0.0},{-3e-15}")
    path = tmp_path / "monitor.csv"
    path.write_text("\n".join(lines) + "\n")
    return str(path)

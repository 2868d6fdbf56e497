"""Run orchestration: single runs with monitoring, convergence studies,
CSV emission.

The CSV contracts are the package's external interface:

  fields.csv   header  t,s,alpha_l,u_g,u_l,p      one row per (time, cell)
  monitor.csv  header  t,c0_inf,c1_inf,mass_g_err,mass_l_err
  errors.csv   header  integrator,dt,component,error
  slopes.csv   header  integrator,component,slope,points_used,coarse_excluded

All floating-point values are written with 17 significant digits so that
reruns are bit-identical and convergence slopes are not quantization
limited.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .cases import CASES, error_norm
from .linsolve import CGConfig
from .tableaus import get_tableau
from .timeint import cfl_timestep, pressure_postprocess, step


def _fmt(x):
    return f"{x:.17g}"


# ----- configuration ------------------------------------------------------

@dataclass
class RunConfig:
    """Settings of one integration run."""

    case: str
    n: int = 0                     # 0 = case default resolution
    dt: Optional[float] = None     # exactly one of dt / courant
    courant: Optional[float] = None
    t_end: Optional[float] = None  # None = case default
    integrator: str = "rk4"
    bc_mode: str = "strong"        # strong | weak boundary imposition
    cg_tol: float = 1e-12
    drift_correction: bool = True
    out_dir: Optional[str] = None
    cadence: int = 0               # snapshot every k steps; 0 = auto

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}; "
                             f"choose from {sorted(CASES)}")
        if (self.dt is None) == (self.courant is None):
            raise ValueError("set exactly one of dt / courant")
        if self.bc_mode not in ("strong", "weak"):
            raise ValueError("bc mode must be 'strong' or 'weak'")
        get_tableau(self.integrator)   # raises on unknown name


def build_case(config):
    """Instantiate the named case at the configured resolution/BC mode."""
    kwargs = {}
    if config.n:
        kwargs["N"] = config.n
    if config.case in ("ifp", "mms"):
        kwargs["strong"] = config.bc_mode == "strong"
    return CASES[config.case](**kwargs)


# ----- single run ---------------------------------------------------------

@dataclass
class RunReport:
    """Outcome of one integration run."""

    config: RunConfig
    case: object
    final_state: object
    snapshots: list                # (t, alpha_l, u_g_cells, u_l_cells, p)
    monitor: list                  # (t, c0_inf, c1_inf, dmg_rel, dml_rel)
    n_steps: int
    wall_time: float


def _monitor_row(model, state, mg0, ml0):
    c0 = float(np.max(np.abs(model.volume_residual(state.m_g, state.m_l))))
    c1 = float(np.max(np.abs(model.c1_residual(state.I_g, state.I_l))))
    mg, ml = model.total_mass(state)
    return (state.t, c0, c1, (mg - mg0) / mg0, (ml - ml0) / ml0)


def _snapshot(model, state, cg_config):
    alpha_l, u_g, u_l = model.primitives(state)
    p = pressure_postprocess(model, state, cg_config)
    # report velocities at cell centers so every column shares one s axis
    ug_c = 0.5 * (u_g[:-1] + u_g[1:]) if not model.grid.periodic \
        else 0.5 * (u_g + np.roll(u_g, -1))
    ul_c = 0.5 * (u_l[:-1] + u_l[1:]) if not model.grid.periodic \
        else 0.5 * (u_l + np.roll(u_l, -1))
    return (state.t, alpha_l.copy(), ug_c, ul_c, p.copy())


def run(config):
    """Integrate one case; optionally write fields.csv / monitor.csv."""
    case = build_case(config)
    model = case.model
    state = case.initial.copy()
    tableau = get_tableau(config.integrator)
    cg = CGConfig(tol=config.cg_tol)
    t_end = case.t_end if config.t_end is None else config.t_end

    if config.dt is not None:
        dt = config.dt
    else:
        dt = cfl_timestep(model, state, config.courant)
    n_steps = max(1, int(round(t_end / dt)))
    dt = t_end / n_steps

    cadence = config.cadence or max(1, n_steps // 200)
    mg0, ml0 = model.total_mass(state)
    monitor = [_monitor_row(model, state, mg0, ml0)]
    snapshots = [_snapshot(model, state, cg)]

    t0 = time.perf_counter()
    for k in range(n_steps):
        state, _ = step(model, state, tableau, dt, cg,
                        drift_correction=config.drift_correction)
        monitor.append(_monitor_row(model, state, mg0, ml0))
        if (k + 1) % cadence == 0 or k + 1 == n_steps:
            snapshots.append(_snapshot(model, state, cg))
    wall = time.perf_counter() - t0

    report = RunReport(config=config, case=case, final_state=state,
                       snapshots=snapshots, monitor=monitor,
                       n_steps=n_steps, wall_time=wall)
    if config.out_dir is not None:
        os.makedirs(config.out_dir, exist_ok=True)
        write_fields_csv(os.path.join(config.out_dir, "fields.csv"),
                         model.grid.s_cells, snapshots)
        write_monitor_csv(os.path.join(config.out_dir, "monitor.csv"),
                          monitor)
    return report


def write_fields_csv(path, s_cells, snapshots):
    with open(path, "w") as fh:
        fh.write("t,s,alpha_l,u_g,u_l,p\n")
        for t, alpha_l, u_g, u_l, p in snapshots:
            for j, s in enumerate(s_cells):
                fh.write(",".join(_fmt(v) for v in
                                  (t, s, alpha_l[j], u_g[j], u_l[j], p[j])))
                fh.write("\n")


def write_monitor_csv(path, monitor):
    with open(path, "w") as fh:
        fh.write("t,c0_inf,c1_inf,mass_g_err,mass_l_err\n")
        for row in monitor:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


# ----- convergence studies ------------------------------------------------

DEFAULT_COMPONENTS = {
    "kh": ("alpha_l", "u_g", "u_l", "p"),
    "mms": ("u_l", "p"),
    "ifp": ("u_l",),
    "sloshing": ("alpha_l", "u_l", "p"),
}


def _final_components(case, state, cg_config):
    model = case.model
    alpha_l, u_g, u_l = model.primitives(state)
    p = pressure_postprocess(model, state, cg_config)
    return {"alpha_l": alpha_l, "u_g": u_g, "u_l": u_l, "p": p}


def _analytic_components(case, t):
    """Closed-form fields at time t (cases that carry them in meta)."""
    model = case.model
    sc, sf = model.grid.s_cells, model.grid.s_faces
    if case.name == "mms":
        f = case.meta["fields"]
        return {"alpha_l": np.full(model.grid.N, f.A_l(t) / model.geom.A),
                "u_g": f.u_g(sf, t), "u_l": f.u_l(sf, t), "p": f.p(sc)}
    if case.name == "kh":
        analytic = case.meta["analytic"]
        Wc = analytic(sc, t)
        Wf = analytic(sf, t)
        return {"alpha_l": Wc[0] / model.geom.A,
                "u_g": Wf[2], "u_l": Wf[1], "p": Wc[3]}
    raise ValueError(f"case {case.name!r} has no analytic solution")


def _member(args):
    """One convergence-study member run (worker-pool entry point)."""
    (case_name, n, bc_mode, integrator, dt, t_end, cg_tol, drift,
     components, reference) = args
    config = RunConfig(case=case_name, n=n, dt=dt, t_end=t_end,
                       integrator=integrator, bc_mode=bc_mode,
                       cg_tol=cg_tol, drift_correction=drift,
                       cadence=10**9)
    case = build_case(config)
    model, state = case.model, case.initial.copy()
    tableau = get_tableau(integrator)
    cg = CGConfig(tol=cg_tol)
    n_steps = max(1, int(round(t_end / dt)))
    for _ in range(n_steps):
        state, _ = step(model, state, tableau, t_end / n_steps, cg,
                        drift_correction=drift)
    numeric = _final_components(case, state, cg)
    if reference == "analytic":
        ref = _analytic_components(case, state.t)
    else:
        ref = reference
    scales = case.meta.get("scales", {})
    return {c: error_norm(numeric[c], ref[c], scales.get(c, 1.0))
            for c in components}


@dataclass
class ConvergenceResult:
    case: str
    bc_mode: str
    components: tuple
    errors: dict      # (integrator, dt) -> {component: error}
    slopes: dict      # (integrator, component) -> (slope, used, excluded)
    dt_lists: dict    # integrator -> descending dt list


def fit_slope(dts, errs):
    """Least-squares log-log slope; drops the two coarsest points when the
    coarse end is out of the asymptotic regime (stability-limit flag)."""
    dts = np.asarray(dts, dtype=float)
    errs = np.asarray(errs, dtype=float)
    excluded = False
    if len(dts) >= 5:
        local = np.diff(np.log(errs)) / np.diff(np.log(dts))
        # non-positive or wildly deviating local order at the coarse end
        ref = np.median(local[2:])
        if (local[0] <= 0.0 or local[1] <= 0.0
                or abs(local[0] - ref) > 1.0):
            excluded = True
    use = slice(2, None) if excluded else slice(None)
    slope = float(np.polyfit(np.log(dts[use]), np.log(errs[use]), 1)[0])
    return slope, int(len(dts[use])), excluded


def convergence(case_name, dt_lists, reference, n=0, bc_mode="strong",
                t_end=None, cg_tol=1e-12, drift_correction=True,
                components=None, nproc=1, out_dir=None):
    """Error table and fitted slopes for a family of integrators.

    dt_lists maps integrator name -> descending list of time steps.
    reference is either the string "analytic" or a pair
    (integrator, dt) defining a reference run.
    """
    probe = build_case(RunConfig(case=case_name, n=n, dt=1.0,
                                 bc_mode=bc_mode))
    if t_end is None:
        t_end = probe.t_end
    if components is None:
        components = DEFAULT_COMPONENTS[case_name]
    for name, dts in dt_lists.items():
        if list(dts) != sorted(dts, reverse=True):
            raise ValueError(f"dt list for {name!r} must be descending")

    if reference == "analytic":
        ref = "analytic"
    else:
        ref_integ, ref_dt = reference
        config = RunConfig(case=case_name, n=n, dt=ref_dt, t_end=t_end,
                           integrator=ref_integ, bc_mode=bc_mode,
                           cg_tol=cg_tol, cadence=10**9)
        case = build_case(config)
        model, state = case.model, case.initial.copy()
        tableau = get_tableau(ref_integ)
        cg = CGConfig(tol=cg_tol)
        n_steps = max(1, int(round(t_end / ref_dt)))
        for _ in range(n_steps):
            state, _ = step(model, state, tableau, t_end / n_steps, cg)
        ref = _final_components(case, state, cg)

    jobs = [(case_name, n, bc_mode, integ, dt, t_end, cg_tol,
             drift_correction, components, ref)
            for integ, dts in dt_lists.items() for dt in dts]
    if nproc > 1:
        with ProcessPoolExecutor(max_workers=nproc) as pool:
            outs = list(pool.map(_member, jobs))
    else:
        outs = [_member(j) for j in jobs]

    errors = {}
    for (cn, _, _, integ, dt, *_), out in zip(jobs, outs):
        errors[(integ, dt)] = out

    slopes = {}
    for integ, dts in dt_lists.items():
        for comp in components:
            errs = [errors[(integ, dt)][comp] for dt in dts]
            slopes[(integ, comp)] = fit_slope(dts, errs)

    result = ConvergenceResult(case=case_name, bc_mode=bc_mode,
                               components=tuple(components),
                               errors=errors, slopes=slopes,
                               dt_lists={k: list(v)
                                         for k, v in dt_lists.items()})
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        write_errors_csv(os.path.join(out_dir, "errors.csv"), result)
        write_slopes_csv(os.path.join(out_dir, "slopes.csv"), result)
    return result


def write_errors_csv(path, result):
    with open(path, "w") as fh:
        fh.write("integrator,dt,component,error\n")
        for integ, dts in result.dt_lists.items():
            for dt in dts:
                for comp in result.components:
                    err = result.errors[(integ, dt)][comp]
                    fh.write(f"{integ},{_fmt(dt)},{comp},{_fmt(err)}\n")


def write_slopes_csv(path, result):
    with open(path, "w") as fh:
        fh.write("integrator,component,slope,points_used,coarse_excluded\n")
        for integ in result.dt_lists:
            for comp in result.components:
                slope, used, excl = result.slopes[(integ, comp)]
                fh.write(f"{integ},{comp},{_fmt(slope)},{used},"
                         f"{int(excl)}\n")

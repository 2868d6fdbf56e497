"""Command-line interface.

Subcommands:

  run          integrate a named case, write fields.csv / monitor.csv
  convergence  temporal-error study over a list of time steps
  dispersion   linear growth rates of a case's base state
  tableau      order-condition report for a registered tableau

Configuration is a flat ``key=value`` text file (``--config``) with CLI
flags taking precedence; the merged configuration is echoed into the
output directory.  The environment variable TWOFLUID_OUT sets the default
output root.
"""

import argparse
import os
import sys

from . import harness
from .cases import CASES
from .tableaus import get_tableau, verify_tableau

OUT_ROOT_ENV = "TWOFLUID_OUT"


def _read_config_file(path):
    values = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"config line without '=': {raw.rstrip()}")
            key, val = line.split("=", 1)
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _merge(args, file_values, keys):
    """File values fill in flags the user left at None/False defaults."""
    casts = {"n": int, "dt": float, "courant": float, "tend": float,
             "cg_tol": float, "cadence": int, "nproc": int,
             "no_drift_correction": lambda v: v.lower() in ("1", "true",
                                                            "yes")}
    for key, val in file_values.items():
        if key not in keys:
            raise SystemExit(f"unknown config key {key!r}")
        if getattr(args, key, None) in (None, False):
            setattr(args, key, casts.get(key, str)(val))


def _out_dir(args, default_leaf):
    if args.out:
        return args.out
    root = os.environ.get(OUT_ROOT_ENV, "out")
    return os.path.join(root, default_leaf)


def _echo_config(out_dir, pairs):
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "config.txt"), "w") as fh:
        for key, val in pairs:
            fh.write(f"{key}={val}\n")


def _add_run_flags(sub):
    sub.add_argument("--config", help="flat key=value config file")
    sub.add_argument("--case", choices=sorted(CASES))
    sub.add_argument("--n", type=int, help="pressure volumes (0 = default)")
    sub.add_argument("--dt", type=float)
    sub.add_argument("--courant", type=float)
    sub.add_argument("--tend", type=float)
    sub.add_argument("--integrator")
    sub.add_argument("--bc-mode", choices=("strong", "weak"),
                     dest="bc_mode")
    sub.add_argument("--cg-tol", type=float, dest="cg_tol")
    sub.add_argument("--no-drift-correction", action="store_true",
                     dest="no_drift_correction")
    sub.add_argument("--out")


RUN_KEYS = ("case", "n", "dt", "courant", "tend", "integrator", "bc_mode",
            "cg_tol", "no_drift_correction", "out", "cadence")


def cmd_run(args):
    if args.config:
        _merge(args, _read_config_file(args.config), RUN_KEYS)
    if args.case is None:
        raise SystemExit("run: --case is required (flag or config file)")
    if args.dt is None and args.courant is None:
        raise SystemExit("run: set one of --dt / --courant")
    out_dir = _out_dir(args, args.case)
    config = harness.RunConfig(
        case=args.case, n=args.n or 0, dt=args.dt, courant=args.courant,
        t_end=args.tend, integrator=args.integrator or "rk4",
        bc_mode=args.bc_mode or "strong",
        cg_tol=args.cg_tol if args.cg_tol is not None else 1e-12,
        drift_correction=not args.no_drift_correction,
        out_dir=out_dir, cadence=getattr(args, "cadence", None) or 0)
    _echo_config(out_dir, [
        ("case", config.case), ("n", config.n), ("dt", config.dt),
        ("courant", config.courant), ("tend", config.t_end),
        ("integrator", config.integrator), ("bc_mode", config.bc_mode),
        ("cg_tol", config.cg_tol),
        ("drift_correction", int(config.drift_correction)),
        ("cadence", config.cadence), ("out", out_dir)])
    report = harness.run(config)
    last = report.monitor[-1]
    print(f"case={config.case}")
    print(f"steps={report.n_steps}")
    print(f"t_final={last[0]:.17g}")
    print(f"c0_inf={last[1]:.17g}")
    print(f"c1_inf={last[2]:.17g}")
    print(f"mass_g_err={last[3]:.17g}")
    print(f"mass_l_err={last[4]:.17g}")
    print(f"wall_time={report.wall_time:.3f}")
    print(f"out={out_dir}")
    return 0


def cmd_convergence(args):
    if args.config:
        _merge(args, _read_config_file(args.config),
               RUN_KEYS + ("integrators", "dts", "ref", "nproc",
                           "components"))
    if args.case is None:
        raise SystemExit("convergence: --case is required")
    if not args.dts:
        raise SystemExit("convergence: --dts is required")
    args.integrators = args.integrators or "rk4"
    args.ref = args.ref or "analytic"
    args.nproc = args.nproc or 1
    integrators = [s.strip() for s in args.integrators.split(",")]
    dts = sorted((float(s) for s in args.dts.split(",")), reverse=True)
    if args.ref == "analytic":
        reference = "analytic"
    else:
        name, _, dt_s = args.ref.partition(":")
        if not dt_s:
            raise SystemExit("--ref must be 'analytic' or 'NAME:DT'")
        reference = (name, float(dt_s))
    components = ([s.strip() for s in args.components.split(",")]
                  if args.components else None)
    out_dir = _out_dir(args, f"{args.case}-convergence")
    _echo_config(out_dir, [
        ("case", args.case), ("n", args.n or 0),
        ("bc_mode", args.bc_mode or "strong"), ("tend", args.tend),
        ("integrators", ",".join(integrators)),
        ("dts", ",".join(f"{d:.17g}" for d in dts)), ("ref", args.ref),
        ("cg_tol", args.cg_tol if args.cg_tol is not None else 1e-12),
        ("drift_correction", int(not args.no_drift_correction)),
        ("nproc", args.nproc), ("out", out_dir)])
    result = harness.convergence(
        args.case, {name: dts for name in integrators}, reference,
        n=args.n or 0, bc_mode=args.bc_mode or "strong", t_end=args.tend,
        cg_tol=args.cg_tol if args.cg_tol is not None else 1e-12,
        drift_correction=not args.no_drift_correction,
        components=components, nproc=args.nproc, out_dir=out_dir)
    for (integ, comp), (slope, used, excl) in sorted(result.slopes.items()):
        print(f"slope.{integ}.{comp}={slope:.4f} points={used} "
              f"coarse_excluded={int(excl)}")
    print(f"out={out_dir}")
    return 0


def cmd_dispersion(args):
    if args.case != "kh":
        raise SystemExit("dispersion: only the 'kh' case has a uniform "
                         "base state with a closed-form steady solution")
    case = CASES["kh"](k_wave=args.k)
    omega1 = case.meta["omega1"]
    omega2 = case.meta["omega2"]
    print(f"case={args.case}")
    print(f"k={args.k:.17g}")
    print(f"omega1_real={omega1.real:.17g}")
    print(f"omega1_imag={omega1.imag:.17g}")
    print(f"omega2_real={omega2.real:.17g}")
    print(f"omega2_imag={omega2.imag:.17g}")
    return 0


def cmd_tableau(args):
    tableau = get_tableau(args.name)
    report = verify_tableau(tableau, order=args.order)
    print(f"name={report['name']}")
    print(f"order={report['order']}")
    for label, (res, ok) in report["conditions"].items():
        key = label.split("=")[0].strip().replace(" ", "_")
        print(f"{key}_residual={res:.17g}")
        print(f"{key}={'PASS' if ok else 'FAIL'}")
    print(f"subdiagonal_nonzero="
          f"{'PASS' if report['subdiagonal_nonzero'] else 'FAIL'}")
    print(f"dae_extra_value={report['dae_extra_value']:.17g}")
    print(f"dae_extra_residual={report['dae_extra'][0]:.17g}")
    print(f"dae_extra={'PASS' if report['dae_extra'][1] else 'FAIL'}")
    print(f"classical={'PASS' if report['classical_ok'] else 'FAIL'}")
    print(f"all={'PASS' if report['all_ok'] else 'FAIL'}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="twofluid",
        description="1-D incompressible two-fluid pipe flow simulator")
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="integrate one case")
    _add_run_flags(p_run)
    p_run.add_argument("--cadence", type=int,
                       help="snapshot every k steps (0 = auto)")
    p_run.set_defaults(func=cmd_run)

    p_conv = subs.add_parser("convergence", help="temporal error study")
    _add_run_flags(p_conv)
    p_conv.add_argument("--integrators",
                        help="comma-separated tableau names")
    p_conv.add_argument("--dts", required=False,
                        help="comma-separated time steps")
    p_conv.add_argument("--ref",
                        help="'analytic' or reference run 'NAME:DT'")
    p_conv.add_argument("--components",
                        help="comma-separated field names")
    p_conv.add_argument("--nproc", type=int)
    p_conv.set_defaults(func=cmd_convergence)

    p_disp = subs.add_parser("dispersion",
                             help="linear temporal modes at a wavenumber")
    p_disp.add_argument("--case", default="kh")
    p_disp.add_argument("--k", type=float, required=True)
    p_disp.set_defaults(func=cmd_dispersion)

    p_tab = subs.add_parser("tableau", help="order-condition report")
    p_tab.add_argument("--name", required=True)
    p_tab.add_argument("--order", type=int)
    p_tab.set_defaults(func=cmd_tableau)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

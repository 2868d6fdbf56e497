"""Figures from twofluid CSV outputs.

Three figure kinds, one per CSV schema:

- convergence: log-log temporal error vs time step per integrator, one
  panel per solution component, with dashed order-reference slopes
  (reads ``errors.csv``: integrator,dt,component,error)
- spacetime: field heat-maps over the (s, t) plane, one panel per field
  (reads ``fields.csv``: t,s,alpha_l,u_g,u_l,p)
- monitor: semilog constraint and conservation traces over time
  (reads ``monitor.csv``: t,c0_inf,c1_inf,mass_g_err,mass_l_err)

Generation is read-only on the inputs and deterministic: fixed inputs and
options produce byte-identical vector output.
"""

import csv
import math

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

plt.rcParams["svg.hashsalt"] = "plotkit"

ERRORS_HEADER = ["integrator", "dt", "component", "error"]
FIELDS_HEADER = ["t", "s", "alpha_l", "u_g", "u_l", "p"]
MONITOR_HEADER = ["t", "c0_inf", "c1_inf", "mass_g_err", "mass_l_err"]

FIELD_LABELS = {"alpha_l": r"$\alpha_\ell$", "u_g": r"$u_g$ [m/s]",
                "u_l": r"$u_\ell$ [m/s]", "p": r"$p$ [Pa]"}
MONITOR_LABELS = {"c0_inf": r"$\|C_0\|_\infty$",
                  "c1_inf": r"$\|C_1\|_\infty$",
                  "mass_g_err": "gas mass error",
                  "mass_l_err": "liquid mass error"}


class SchemaError(ValueError):
    """Input CSV does not match the documented schema or has no rows."""


def _read_table(path, header):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != header:
        raise SchemaError(f"{path}: expected header {','.join(header)}, "
                          f"got {','.join(rows[0]) if rows else 'nothing'}")
    body = [r for r in rows[1:] if r]
    if not body:
        raise SchemaError(f"{path}: no data rows")
    if any(len(r) != len(header) for r in body):
        raise SchemaError(f"{path}: ragged rows")
    return body


def _save(fig, out):
    # strip volatile metadata so identical inputs give identical bytes
    meta = {}
    if str(out).endswith(".svg"):
        meta["Date"] = None
    elif str(out).endswith(".pdf"):
        meta["CreationDate"] = None
    fig.savefig(out, metadata=meta)
    plt.close(fig)


def _panel_grid(n):
    cols = 1 if n == 1 else 2
    rows = math.ceil(n / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(4.2 * cols, 3.4 * rows),
                             squeeze=False, constrained_layout=True)
    flat = [ax for row in axes for ax in row]
    for ax in flat[n:]:
        ax.set_visible(False)
    return fig, flat[:n]


def plot_convergence(errors_csv, out):
    """Log-log error vs dt per integrator, one panel per component."""
    body = _read_table(errors_csv, ERRORS_HEADER)
    components, integrators = [], []
    data = {}
    for integ, dt, comp, err in body:
        if comp not in components:
            components.append(comp)
        if integ not in integrators:
            integrators.append(integ)
        data.setdefault((integ, comp), []).append((float(dt), float(err)))

    fig, axes = _panel_grid(len(components))
    markers = "osd^v<>"
    for ax, comp in zip(axes, components):
        emin, emax = np.inf, 0.0
        dt_all = []
        for k, integ in enumerate(integrators):
            pts = sorted(data.get((integ, comp), []))
            if not pts:
                continue
            dts = np.array([p[0] for p in pts])
            errs = np.array([p[1] for p in pts])
            ax.loglog(dts, errs, marker=markers[k % len(markers)],
                      ms=4, label=integ)
            pos = errs[errs > 0.0]
            if pos.size:
                emin, emax = min(emin, pos.min()), max(emax, pos.max())
            dt_all.extend(dts)
        if dt_all and emax > 0.0:
            dt0, dt1 = min(dt_all), max(dt_all)
            ref = np.array([dt0, dt1])
            for q in range(1, 5):
                # anchor each dashed reference slope at the coarse end
                line = emax * (ref / dt1) ** q
                if line.min() < emin / 30.0:     # keep within the data band
                    continue
                ax.loglog(ref, line, "k--", lw=0.8)
                ax.annotate(f"{q}", (ref[0], line[0]), fontsize=8,
                            textcoords="offset points", xytext=(2, -9))
        ax.set_xlabel(r"$\Delta t$ [s]")
        ax.set_ylabel("error")
        ax.set_title(FIELD_LABELS.get(comp, comp))
        ax.grid(True, which="both", alpha=0.3)
    axes[0].legend(fontsize=8)
    _save(fig, out)


def plot_spacetime(fields_csv, out):
    """Field heat-maps over the (s, t) plane, one panel per field."""
    body = _read_table(fields_csv, FIELDS_HEADER)
    arr = np.array(body, dtype=float)
    s = np.unique(arr[:, 1])
    t = np.unique(arr[:, 0])
    if arr.shape[0] != s.size * t.size:
        raise SchemaError(f"{fields_csv}: rows do not fill a (t, s) grid "
                          f"({arr.shape[0]} rows, {t.size} x {s.size})")
    order = np.lexsort((arr[:, 1], arr[:, 0]))
    grids = {name: arr[order, 2 + k].reshape(t.size, s.size)
             for k, name in enumerate(FIELDS_HEADER[2:])}

    fig, axes = _panel_grid(4)
    for ax, name in zip(axes, FIELDS_HEADER[2:]):
        im = ax.pcolormesh(s, t, grids[name], shading="nearest",
                           rasterized=True)
        fig.colorbar(im, ax=ax)
        ax.set_xlabel(r"$s$ [m]")
        ax.set_ylabel(r"$t$ [s]")
        ax.set_title(FIELD_LABELS[name])
    _save(fig, out)


def plot_monitor(monitor_csv, out):
    """Semilog constraint-residual and mass-conservation traces."""
    body = _read_table(monitor_csv, MONITOR_HEADER)
    arr = np.array(body, dtype=float)
    t = arr[:, 0]
    fig, ax = plt.subplots(figsize=(6.0, 3.8), constrained_layout=True)
    floor = 1e-17                     # keep exact zeros on the log axis
    for k, name in enumerate(MONITOR_HEADER[1:]):
        ax.semilogy(t, np.maximum(np.abs(arr[:, 1 + k]), floor),
                    label=MONITOR_LABELS[name])
    ax.set_xlabel(r"$t$ [s]")
    ax.set_ylabel("residual")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, out)

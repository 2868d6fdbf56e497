"""Butcher tableau registry and order-condition verification.

All integrators are explicit.  The half-explicit pressure treatment needs a
nonzero subdiagonal a_{i+1,i} (with b_s playing the role of the last
subdiagonal entry), since each stage pressure is recovered from the scaled
Poisson solution as p_{i-1} = phi_{i-1} / (a_{i,i-1} dt).

Methods of order >= 3 are subject to one additional order condition caused
by the solution-dependent pressure gradient,

    sum_ij b_i c_i omega_ij c_{j+1}^2 = 2/3,

where omega is the inverse of the shifted tableau (rows a_{i+1,*} topped
off with b) and c_{s+1} = 1.  Classic tableaus generally violate it and
then drop one order when the boundary data is time-dependent and strongly
imposed; the "rk3" method below is built to satisfy it.
"""

from dataclasses import dataclass, field

import numpy as np

SQRT6 = np.sqrt(6.0)


@dataclass(frozen=True)
class ButcherTableau:
    name: str
    a: np.ndarray          # (s, s) strictly lower triangular
    b: np.ndarray          # (s,)
    c: np.ndarray          # (s,)
    order: int             # classical order

    @property
    def s(self):
        return self.b.size

    def subdiagonal(self):
        """Entries a_{21}, a_{32}, ..., a_{s,s-1}, b_s (all must be nonzero)."""
        sub = [self.a[i, i - 1] for i in range(1, self.s)]
        sub.append(self.b[-1])
        return np.array(sub)

    def shifted(self):
        """The s x s lower-triangular tableau with rows (a_{i+1,*}..., b)."""
        at = np.zeros((self.s, self.s))
        at[:-1, :] = self.a[1:, :]
        at[-1, :] = self.b
        return at


def _tab(name, a, b, c, order):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    if not np.allclose(a.sum(axis=1), c, atol=1e-14):
        raise ValueError(f"{name}: row sums of a do not match c")
    return ButcherTableau(name=name, a=a, b=b, c=c, order=order)


# Two-stage second-order method (explicit trapezoidal rule).
RK2 = _tab("rk2",
           [[0.0, 0.0],
            [1.0, 0.0]],
           [0.5, 0.5],
           [0.0, 1.0],
           order=2)

# Three-stage third-order method with c2 = 1/2, chosen so that the extra
# order condition for the solution-dependent pressure gradient holds.
RK3_PROPOSED = _tab("rk3",
                    [[0.0, 0.0, 0.0],
                     [0.5, 0.0, 0.0],
                     [-1.0, 2.0, 0.0]],
                    [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0],
                    [0.0, 0.5, 1.0],
                    order=3)

# Three-stage strong-stability-preserving method (Shu-Osher form reduced to
# its Butcher tableau); classical order 3 but fails the extra DAE condition.
RK3_SSP = _tab("rk3-ssp",
               [[0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.25, 0.25, 0.0]],
               [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
               [0.0, 1.0, 0.5],
               order=3)

# The classic fourth-order method.
RK4 = _tab("rk4",
           [[0.0, 0.0, 0.0, 0.0],
            [0.5, 0.0, 0.0, 0.0],
            [0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0]],
           [1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0],
           [0.0, 0.5, 0.5, 1.0],
           order=4)

# Five-stage fourth-order half-explicit method (Brasey & Hairer); satisfies
# the additional conditions for solution-dependent constraint Jacobians.
HEM4 = _tab("hem4",
            [[0.0, 0.0, 0.0, 0.0, 0.0],
             [3.0 / 10.0, 0.0, 0.0, 0.0, 0.0],
             [(1.0 + SQRT6) / 30.0, (11.0 - 4.0 * SQRT6) / 30.0, 0.0, 0.0, 0.0],
             [(-79.0 - 31.0 * SQRT6) / 150.0, (-1.0 - 4.0 * SQRT6) / 30.0,
              (24.0 + 11.0 * SQRT6) / 25.0, 0.0, 0.0],
             [(14.0 + 5.0 * SQRT6) / 6.0, (-8.0 + 7.0 * SQRT6) / 6.0,
              (-9.0 - 7.0 * SQRT6) / 4.0, (9.0 - SQRT6) / 4.0, 0.0]],
            [0.0, 0.0, (16.0 - SQRT6) / 36.0, (16.0 + SQRT6) / 36.0, 1.0 / 9.0],
            [0.0, 3.0 / 10.0, (4.0 - SQRT6) / 10.0, (4.0 + SQRT6) / 10.0, 1.0],
            order=4)

TABLEAUS = {t.name: t for t in (RK2, RK3_PROPOSED, RK3_SSP, RK4, HEM4)}
# Common aliases.
TABLEAUS["rk3-proposed"] = RK3_PROPOSED


def get_tableau(name):
    try:
        return TABLEAUS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown integrator {name!r}; "
                       f"registered: {sorted(set(TABLEAUS))}") from None


# Classical order conditions as (order, label, residual function).
_CLASSICAL_CONDITIONS = [
    (1, "sum b = 1", lambda a, b, c: b.sum() - 1.0),
    (2, "sum b c = 1/2", lambda a, b, c: b @ c - 0.5),
    (3, "sum b c^2 = 1/3", lambda a, b, c: b @ c**2 - 1.0 / 3.0),
    (3, "sum b a c = 1/6", lambda a, b, c: b @ (a @ c) - 1.0 / 6.0),
    (4, "sum b c^3 = 1/4", lambda a, b, c: b @ c**3 - 0.25),
    (4, "sum b c a c = 1/8", lambda a, b, c: (b * c) @ (a @ c) - 0.125),
    (4, "sum b a c^2 = 1/12", lambda a, b, c: b @ (a @ c**2) - 1.0 / 12.0),
    (4, "sum b a a c = 1/24", lambda a, b, c: b @ (a @ (a @ c)) - 1.0 / 24.0),
]


def dae_extra_condition(tableau):
    """Value of sum_ij b_i c_i omega_ij c_{j+1}^2 (target 2/3).

    omega is the inverse of the shifted tableau and the shifted abscissae
    are (c_2, ..., c_s, 1).
    """
    at = tableau.shifted()
    omega = np.linalg.inv(at)
    c_shift = np.append(tableau.c[1:], 1.0)
    return (tableau.b * tableau.c) @ omega @ c_shift**2


def verify_tableau(tableau, order=None, tol=1e-14):
    """Check classical order conditions up to `order` plus the DAE condition.

    Returns a report dict with one entry per condition:
    {label: (residual, passed)}, plus summary booleans.
    """
    if order is None:
        order = tableau.order
    a, b, c = tableau.a, tableau.b, tableau.c
    report = {"name": tableau.name, "order": order, "conditions": {}}
    classical_ok = True
    for p, label, fn in _CLASSICAL_CONDITIONS:
        if p > order:
            continue
        res = float(fn(a, b, c))
        ok = abs(res) <= tol
        classical_ok &= ok
        report["conditions"][label] = (res, ok)

    sub = tableau.subdiagonal()
    sub_ok = bool(np.all(sub != 0.0))
    report["subdiagonal_nonzero"] = sub_ok

    try:
        extra = float(dae_extra_condition(tableau))
        extra_res = extra - 2.0 / 3.0
        extra_ok = abs(extra_res) <= tol
    except np.linalg.LinAlgError:
        extra, extra_res, extra_ok = float("nan"), float("nan"), False
        report["shifted_singular"] = True
    report["dae_extra"] = (extra_res, extra_ok)
    report["dae_extra_value"] = extra
    report["classical_ok"] = classical_ok
    report["all_ok"] = classical_ok and sub_ok and (extra_ok or order < 3)
    return report

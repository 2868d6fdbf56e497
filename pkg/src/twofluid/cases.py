"""Benchmark case definitions.

Four reproducible experiments:

  kh        growing Kelvin-Helmholtz wave on a periodic pipe, seeded with
            a single unstable eigenmode of the linearized system
  sloshing  liquid sloshing in a closed, slightly inclined pipe section
  ifp       hold-up wave in a 1 km pipeline driven by a sinusoidally
            ramped gas inflow (inflow/outflow boundary conditions)
  mms       manufactured analytic solution with spatially linear momenta,
            exercising time-dependent boundary data without spatial error

Each builder returns a Case holding a ready model and a constraint-
consistent initial state.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import closures, geometry
from .boundary import BoundarySpec, EndCondition, Signal
from .characteristics import dispersion_modes, scale_mode
from .closures import FluidProps
from .geometry import PipeGeometry
from .linsolve import CGConfig
from .model import Grid, State, TwoFluidModel
from .timeint import consistent_init


class CaseError(RuntimeError):
    pass


@dataclass
class Case:
    name: str
    model: TwoFluidModel
    initial: State
    t_end: float
    dt_default: float
    meta: dict = field(default_factory=dict)


# ----- shared steady-state helpers ---------------------------------------

def uniform_steady_holdup(I_g0, I_l0, geom, fluids, friction="churchill",
                          interfacial="gas-wall"):
    """Hold-up of the uniform steady state with given mass flow rates.

    In a horizontal pipe with constant rates the phase momentum balances
    reduce to S_l / A_l = S_g / A_g (the common pressure gradient); the
    hold-up is the root of that scalar equation.
    """

    def residual(alpha_l):
        sec = geometry.cross_section(alpha_l, geom)
        u_g = I_g0 / (fluids.rho_g * sec.A_g)
        u_l = I_l0 / (fluids.rho_l * sec.A_l)
        S_g, S_l = closures.source_terms(u_g, u_l, sec, fluids, geom,
                                         0.0, 0.0, friction, interfacial)
        return float(S_l / sec.A_l - S_g / sec.A_g)

    lo, hi = 1e-4, 1.0 - 1e-4
    if residual(lo) * residual(hi) > 0:
        raise CaseError("no steady hold-up root in (0, 1)")
    return brentq(residual, lo, hi, xtol=1e-14)


def steady_pressure_gradient(alpha_l, I_g0, I_l0, geom, fluids,
                             friction="churchill", interfacial="gas-wall"):
    """dp/ds of the uniform steady state (equal for both phases)."""
    sec = geometry.cross_section(alpha_l, geom)
    u_g = I_g0 / (fluids.rho_g * sec.A_g)
    u_l = I_l0 / (fluids.rho_l * sec.A_l)
    S_g, _ = closures.source_terms(u_g, u_l, sec, fluids, geom,
                                   0.0, 0.0, friction, interfacial)
    return float(S_g / sec.A_g)


# ----- Kelvin-Helmholtz ---------------------------------------------------

KH_FLUIDS = FluidProps(rho_g=1.1614, rho_l=1000.0, mu_g=1.8e-5, mu_l=8.9e-4)
KH_GEOM = PipeGeometry(R=0.039, L=1.0, phi=0.0, eps_wall=1e-8)


def kh_steady_state(u_l=1.0, alpha_l=0.9, geom=KH_GEOM, fluids=KH_FLUIDS,
                    friction="churchill"):
    """Gas velocity and driving pressure gradient of the stratified steady
    state with prescribed liquid velocity and hold-up.

    The body force F that balances the gas momentum equation is
    F = (tau_gl P_gl + tau_g P_g) / A_g; substituting it into the liquid
    balance leaves one scalar equation for u_g.  Returns
    (u_g, dp_body/ds) where the sustaining body force equals the negative
    of the returned pressure gradient.
    """
    sec = geometry.cross_section(alpha_l, geom)

    def body_force(u_g):
        tau_g, _, tau_gl = closures.shear_stresses(u_g, u_l, sec, fluids,
                                                   geom, friction)
        return float((tau_gl * sec.P_gl + tau_g * sec.P_g) / sec.A_g)

    def residual(u_g):
        _, tau_l, tau_gl = closures.shear_stresses(u_g, u_l, sec, fluids,
                                                   geom, friction)
        return float(tau_gl * sec.P_gl - tau_l * sec.P_l
                     + body_force(u_g) * sec.A_l)

    lo, hi = u_l + 1e-9, 100.0
    if residual(lo) * residual(hi) > 0:
        raise CaseError("gas-velocity balance has no root "
                        "(degenerate friction closure?)")
    u_g = brentq(residual, lo, hi, xtol=1e-12)
    return float(u_g), -body_force(u_g)


def kh_case(amplitude=1e-3, N=40, u_l=1.0, alpha_l=0.9, k_wave=2.0 * np.pi,
            g=9.8, cg_config=None):
    """Periodic pipe seeded with the unstable KH eigenmode at wavenumber k."""
    geom, fluids = KH_GEOM, KH_FLUIDS
    u_g, dpds = kh_steady_state(u_l, alpha_l, geom, fluids)
    F_body = -dpds

    A_l0 = alpha_l * geom.A
    W0 = np.array([A_l0, u_l, u_g, 0.0])
    omegas, vecs = dispersion_modes(k_wave, W0, fluids, geom, g, 0.0, F_body)
    eps2 = scale_mode(vecs[1], amplitude * geom.A)

    grid = Grid(N=N, L=geom.L, periodic=True)
    bc = BoundarySpec.make_periodic()
    model = TwoFluidModel(grid, geom, fluids, bc, g=g,
                          body_force=lambda s, t: F_body)

    def analytic(s, t):
        """Linearized solution W(s, t) = W0 + Re[eps2 e^{i(w2 t - k s)}]."""
        wave = np.exp(1j * (omegas[1] * t - k_wave * np.asarray(s)))
        return W0[:, None] + np.real(eps2[:, None] * wave[None, :])

    sc, sf = grid.s_cells, grid.s_faces
    A_l_c = analytic(sc, 0.0)[0]
    Wf = analytic(sf, 0.0)
    A_l_f, u_l_f, u_g_f = Wf[0], Wf[1], Wf[2]
    state = State(t=0.0,
                  m_g=fluids.rho_g * (geom.A - A_l_c),
                  m_l=fluids.rho_l * A_l_c,
                  I_g=fluids.rho_g * (geom.A - A_l_f) * u_g_f,
                  I_l=fluids.rho_l * A_l_f * u_l_f,
                  p=analytic(sc, 0.0)[3])
    state = consistent_init(model, state, cg_config or CGConfig())
    meta = {"omega1": omegas[0], "omega2": omegas[1], "eps2": eps2,
            "u_g": u_g, "dpds_body": dpds, "amplitude": amplitude,
            "k_wave": k_wave, "analytic": analytic,
            "scales": {"alpha_l": amplitude,
                       "u_g": abs(eps2[2]), "u_l": abs(eps2[1]),
                       "p": abs(eps2[3])}}
    return Case(name="kh", model=model, initial=state, t_end=1.0,
                dt_default=1e-3, meta=meta)


# ----- sloshing tank ------------------------------------------------------

SLOSHING_FLUIDS = FluidProps(rho_g=1.1614, rho_l=1000.0,
                             mu_g=1.5e-2, mu_l=5.0e-2)


def sloshing_case(N=80, alpha_l=0.5, g=9.8, cg_config=None):
    """Closed pipe section tilted by 2 degrees, uniform fill, fluid at rest."""
    geom = PipeGeometry(R=0.05, L=1.0, phi=np.deg2rad(2.0), eps_wall=1e-8)
    fluids = SLOSHING_FLUIDS
    grid = Grid(N=N, L=geom.L, periodic=False)
    bc = BoundarySpec.bounded(EndCondition.wall(), EndCondition.wall())
    model = TwoFluidModel(grid, geom, fluids, bc, g=g)
    state = State(t=0.0,
                  m_g=np.full(N, fluids.rho_g * (1.0 - alpha_l) * geom.A),
                  m_l=np.full(N, fluids.rho_l * alpha_l * geom.A),
                  I_g=np.zeros(N + 1), I_l=np.zeros(N + 1),
                  p=np.zeros(N),
                  mb_g=np.full(2, fluids.rho_g * (1.0 - alpha_l) * geom.A),
                  mb_l=np.full(2, fluids.rho_l * alpha_l * geom.A))
    state = consistent_init(model, state, cg_config or CGConfig())
    return Case(name="sloshing", model=model, initial=state, t_end=50.0,
                dt_default=0.02, meta={"alpha_l": alpha_l})


# ----- IFP gas ramp-up ----------------------------------------------------

IFP_FLUIDS = FluidProps(rho_g=1.26, rho_l=1003.0, mu_g=1.8e-5, mu_l=1.516e-3)
IFP_GEOM = PipeGeometry(R=0.073, L=1000.0, phi=0.0, eps_wall=1e-8)
IFP_IG_START = 0.02
IFP_IG_END = 0.04
IFP_IL = 1.0
IFP_P_OUT = 1.0e6


def ifp_gas_signal(start=IFP_IG_START, end=IFP_IG_END):
    """Smoothly started sinusoidal gas mass-flow ramp (period 5 pi)."""
    damp = end - start

    def value(t):
        if t <= 0.0:
            return start
        return start + damp * np.exp(-10.0 / t) * (0.5 + np.sin(t / 5.0) ** 2)

    def derivative(t):
        if t <= 0.0:
            return 0.0
        e = np.exp(-10.0 / t)
        return damp * e * ((10.0 / t**2) * (0.5 + np.sin(t / 5.0) ** 2)
                           + np.sin(2.0 * t / 5.0) / 5.0)

    return Signal(value, derivative)


def ifp_case(N=40, strong=True, g=9.8, cg_config=None):
    """1 km pipeline, steady initial production, ramped gas inflow."""
    geom, fluids = IFP_GEOM, IFP_FLUIDS
    alpha_l = uniform_steady_holdup(IFP_IG_START, IFP_IL, geom, fluids)
    sec = geometry.cross_section(alpha_l, geom)
    grid = Grid(N=N, L=geom.L, periodic=False)
    bc = BoundarySpec.bounded(
        EndCondition.inflow(ifp_gas_signal(), Signal.constant(IFP_IL),
                            strong=strong),
        EndCondition.outflow(IFP_P_OUT))
    model = TwoFluidModel(grid, geom, fluids, bc, g=g)
    state = State(t=0.0,
                  m_g=np.full(N, fluids.rho_g * float(sec.A_g)),
                  m_l=np.full(N, fluids.rho_l * float(sec.A_l)),
                  I_g=np.full(N + 1, IFP_IG_START),
                  I_l=np.full(N + 1, IFP_IL),
                  p=np.full(N, IFP_P_OUT),
                  mb_g=np.full(2, fluids.rho_g * float(sec.A_g)),
                  mb_l=np.full(2, fluids.rho_l * float(sec.A_l)))
    state = consistent_init(model, state, cg_config or CGConfig())
    return Case(name="ifp", model=model, initial=state, t_end=100.0,
                dt_default=1.25,
                meta={"alpha_l": alpha_l, "strong": strong})


# ----- manufactured solution ---------------------------------------------

MMS_A = 2.0
MMS_B = 1.0 / 20.0


def mms_f(t):
    return (np.sin(MMS_A * t) + 5.0) * np.exp(MMS_B * t) / 60.0


def mms_fdot(t):
    return (MMS_A * np.cos(MMS_A * t)
            + MMS_B * (np.sin(MMS_A * t) + 5.0)) * np.exp(MMS_B * t) / 60.0


def mms_fddot(t):
    return ((2.0 * MMS_A * MMS_B * np.cos(MMS_A * t)
             + (MMS_B**2 - MMS_A**2) * np.sin(MMS_A * t)
             + 5.0 * MMS_B**2) * np.exp(MMS_B * t) / 60.0)


class MMSFields:
    """Analytic fields: uniform time-varying masses, linear-in-s momenta.

    m_g = rho_g A_hat_g f(t); momenta chosen so that the mass equations
    hold with zero source; pressure linear in s.  Being (at most) linear
    in s, every field is represented exactly by the central staggered
    discretization, so the discrete solution differs from the analytic one
    only by temporal error.
    """

    def __init__(self, geom, fluids, A_hat_g, u_hat_g, u_hat_l, c1, c2):
        self.geom = geom
        self.fluids = fluids
        self.A_hat_g = A_hat_g
        self.u_hat_g = u_hat_g
        self.u_hat_l = u_hat_l
        self.c1 = c1
        self.c2 = c2

    def A_g(self, t):
        return self.A_hat_g * mms_f(t)

    def A_l(self, t):
        return self.geom.A - self.A_g(t)

    def m_g(self, t):
        return self.fluids.rho_g * self.A_g(t)

    def m_l(self, t):
        return self.fluids.rho_l * self.A_l(t)

    def I_g(self, s, t):
        return self.fluids.rho_g * self.A_hat_g * (
            self.u_hat_g * mms_f(t) - mms_fdot(t) * np.asarray(s))

    def I_l(self, s, t):
        return self.fluids.rho_l * (self.A_l(t) * self.u_hat_l
                                    + self.A_hat_g * mms_fdot(t) * np.asarray(s))

    def Idot_g(self, s, t):
        return self.fluids.rho_g * self.A_hat_g * (
            self.u_hat_g * mms_fdot(t) - mms_fddot(t) * np.asarray(s))

    def Idot_l(self, s, t):
        return self.fluids.rho_l * self.A_hat_g * (
            mms_fddot(t) * np.asarray(s) - mms_fdot(t) * self.u_hat_l)

    def u_g(self, s, t):
        return self.I_g(s, t) / self.m_g(t)

    def u_l(self, s, t):
        return self.I_l(s, t) / self.m_l(t)

    def p(self, s):
        return self.c1 * np.asarray(s) + self.c2

    def dAl_dt(self, t):
        return -self.A_hat_g * mms_fdot(t)


def mms_case(N=40, strong=True, g=9.8):
    """Manufactured-solution pipe: L = 10 m, D = 0.25 m, laminar wall
    friction with a constant interfacial factor (the manufactured gas
    velocity passes through zero inside the domain, where the gas-wall
    based interfacial factor would make the forcing non-smooth and put a
    floor under the temporal error).

    Discrete momentum forcing is injected so that the analytic fields
    satisfy the semi-discrete equations exactly (the convective stencil is
    not exact for the quadratic flux at the outflow half-volume, hence the
    forcing is built from the discrete operator itself), and the boundary
    hold-up equation receives the matching correction so its rate equals
    the analytic dA_l/dt.
    """
    fluids = IFP_FLUIDS
    geom = PipeGeometry(R=0.125, L=10.0, phi=0.0, eps_wall=1e-8)
    I_g0, I_l0 = 0.04, 2.0
    alpha_l0 = uniform_steady_holdup(I_g0, I_l0, geom, fluids,
                                     friction="laminar",
                                     interfacial="constant")
    sec0 = geometry.cross_section(alpha_l0, geom)
    # amplitudes from the steady state; A_hat_g is the steady gas hold-up
    # itself (f stays in (1/15, 0.28] on [0, 20], keeping A_l admissible)
    A_hat_g = float(sec0.A_g)
    u_hat_g = I_g0 / (fluids.rho_g * float(sec0.A_g))
    u_hat_l = I_l0 / (fluids.rho_l * float(sec0.A_l))
    c1 = steady_pressure_gradient(alpha_l0, I_g0, I_l0, geom, fluids,
                                  friction="laminar", interfacial="constant")
    c2 = -c1 * geom.L   # gauge: p*(L) = 0
    fields = MMSFields(geom, fluids, A_hat_g, u_hat_g, u_hat_l, c1, c2)

    grid = Grid(N=N, L=geom.L, periodic=False)
    I_g_sig = Signal(lambda t: float(fields.I_g(0.0, t)),
                     lambda t: float(fields.Idot_g(0.0, t)))
    I_l_sig = Signal(lambda t: float(fields.I_l(0.0, t)),
                     lambda t: float(fields.Idot_l(0.0, t)))
    bc = BoundarySpec.bounded(EndCondition.inflow(I_g_sig, I_l_sig,
                                                  strong=strong),
                              EndCondition.outflow(0.0))
    model = TwoFluidModel(grid, geom, fluids, bc, g=g, friction="laminar",
                          interfacial="constant")

    def analytic_state(t):
        sf = grid.s_faces
        return (np.full(N, fields.m_g(t)), np.full(N, fields.m_l(t)),
                np.full(2, fields.m_g(t)), np.full(2, fields.m_l(t)),
                fields.I_g(sf, t), fields.I_l(sf, t),
                fields.p(grid.s_cells))

    # both forcings are evaluated several times per stage at the same t;
    # memoize on the last time value
    _cache = {"t": None, "face": None, "holdup": None}

    def face_forcing(t):
        if _cache["t"] != t:
            _fill_cache(t)
        return _cache["face"]

    def holdup_forcing(t):
        if _cache["t"] != t:
            _fill_cache(t)
        return _cache["holdup"]

    def _fill_cache(t):
        m_g, m_l, mb_g, mb_l, I_g, I_l, p = analytic_state(t)
        F0_g, F0_l = model.momentum_rhs(m_g, m_l, mb_g, mb_l, I_g, I_l, t,
                                        include_forcing=False)
        Hp_g, Hp_l = model.pressure_gradient(m_g, m_l, mb_g, mb_l, p)
        sf = grid.s_faces
        q_g = fields.Idot_g(sf, t) - (F0_g - Hp_g)
        q_l = fields.Idot_l(sf, t) - (F0_l - Hp_l)
        # store the face part first: the raw hold-up rates below consult
        # face_forcing(t) for the boundary source terms
        _cache.update(t=t, face=(q_g, q_l))
        target = fields.dAl_dt(t)
        corr = []
        for side, idg, idl in (
                ("left", float(fields.Idot_g(0.0, t)),
                 float(fields.Idot_l(0.0, t))),
                ("right", float(fields.Idot_g(geom.L, t)),
                 float(fields.Idot_l(geom.L, t)))):
            raw = model.holdup_rate_end(side, m_g, m_l, mb_g, mb_l, I_g, I_l,
                                        idg, idl, t, include_correction=False)
            corr.append(target - raw)
        _cache["holdup"] = corr

    model.face_forcing = face_forcing
    model.holdup_forcing = holdup_forcing

    m_g, m_l, mb_g, mb_l, I_g, I_l, p = analytic_state(0.0)
    state = State(t=0.0, m_g=m_g, m_l=m_l, I_g=I_g, I_l=I_l, p=p,
                  mb_g=mb_g, mb_l=mb_l)
    meta = {"fields": fields, "alpha_l0": alpha_l0, "strong": strong,
            "scales": {"u_l": abs(u_hat_l), "p": max(abs(c2), 1.0)}}
    return Case(name="mms", model=model, initial=state, t_end=20.0,
                dt_default=0.05, meta=meta)


CASES = {
    "kh": kh_case,
    "sloshing": sloshing_case,
    "ifp": ifp_case,
    "mms": mms_case,
}


def error_norm(numeric, reference, scale=1.0):
    """Scaled infinity-norm temporal error of one solution component."""
    numeric = np.asarray(numeric)
    reference = np.asarray(reference)
    if numeric.shape != reference.shape:
        raise ValueError("component shapes differ")
    return float(np.max(np.abs(numeric - reference)) / scale)

"""Constraint-consistent half-explicit Runge-Kutta time integration.

Each step advances masses explicitly, predicts the stage momenta from the
pressure-free RHS and already-computed stage pressure gradients, and then
projects the prediction onto the volumetric-flow constraint with one
pressure-Poisson solve per stage:

    m_i   = m^n + dt sum_j a_ij F_m(I_j)
    I_i^* = I^n + dt (sum_{j<i} a_ij F_I,j - sum_{j<i-1} a_ij H_j p_j)
    L_{i-1} phi = M I_i^* + r_i (+ eta_i)
    I_i   = I_i^* - H_{i-1} phi,     p_{i-1} = phi / (a_{i,i-1} dt)

with the b row playing the final stage's a row.  The optional eta terms
cancel the accumulated volume-constraint drift so that Q m = A holds to
round-off at every mass stage; with them disabled the scheme is the plain
cascade and the constraint drifts at the truncation-error level.

Boundary-face masses of bounded pipes evolve by the characteristic hold-up
rate G.  G at stage i-1 needs the stage pressure p_{i-1}, which only
becomes available from the stage-i Poisson solve, so the rates are
evaluated lazily one solve behind the masses that consume them.
"""

import numpy as np

from .linsolve import CGConfig, solve as cg_solve
from .model import State


def _rk_sum(base, dt, coeffs, terms):
    out = base.copy()
    for w, term in zip(coeffs, terms):
        if w != 0.0:
            out += dt * w * term
    return out


def step(model, state, tableau, dt, cg_config=None, drift_correction=True):
    """Advance one time step; returns (new_state, info).

    info carries the CG iteration count of every Poisson solve and the
    max-norm of the volume residual used by the drift correction.
    """
    if cg_config is None:
        cg_config = CGConfig()
    model.deriv_h = dt / 100.0
    a, b, c = tableau.a, tableau.b, tableau.c
    s = tableau.s
    bounded = not model.grid.periodic
    tn = state.t
    mg_n, ml_n = state.m_g, state.m_l
    Ig_n, Il_n = state.I_g, state.I_l
    mbg_n, mbl_n = state.mb_g, state.mb_l

    # per-stage storage
    Fm = [None] * s          # (Fm_g, Fm_l)
    FI = [None] * s          # (FI_g, FI_l)
    hp = [None] * s          # (H p)_j per phase
    G = [None] * s           # boundary-face mass rates
    c1 = [None] * s          # constraint residual M I_j + r_j
    stage = [None] * s       # (m_g, m_l, mb_g, mb_l, I_g, I_l) per stage

    vol0 = model.volume_residual(mg_n, ml_n)
    stage[0] = (mg_n, ml_n, mbg_n, mbl_n, Ig_n, Il_n)
    Fm[0] = model.mass_rhs(Ig_n, Il_n)
    FI[0] = model.momentum_rhs(mg_n, ml_n, mbg_n, mbl_n, Ig_n, Il_n, tn)
    c1[0] = model.c1_residual(Ig_n, Il_n)
    cg_iters = []
    phi_prev = None

    def poisson(i_prev, I_star_g, I_star_l, rhs, scale):
        """Constraint projection against the stage-i_prev operator."""
        nonlocal phi_prev
        mg, ml, mbg, mbl = stage[i_prev][:4]
        op = model.assemble_laplacian(mg, ml, mbg, mbl)
        phi, it = cg_solve(op, model.grid.ds * rhs, cg_config, x0=phi_prev)
        phi_prev = phi
        cg_iters.append(it)
        Hphi_g, Hphi_l = model.pressure_gradient(mg, ml, mbg, mbl, phi)
        p_stage = phi / scale
        hp[i_prev] = (Hphi_g / scale, Hphi_l / scale)
        I_g = I_star_g - Hphi_g
        I_l = I_star_l - Hphi_l
        if bounded:
            Idot_g = FI[i_prev][0] - hp[i_prev][0]
            Idot_l = FI[i_prev][1] - hp[i_prev][1]
            mg_p, ml_p, mbg_p, mbl_p, Ig_p, Il_p = stage[i_prev]
            t_prev = tn + c[i_prev] * dt
            G[i_prev] = model.boundary_rates(mg_p, ml_p, mbg_p, mbl_p,
                                             Ig_p, Il_p, Idot_g, Idot_l, t_prev)
        return I_g, I_l, p_stage

    for i in range(1, s):
        ti = tn + c[i] * dt
        m_g = _rk_sum(mg_n, dt, a[i, :i], [Fm[j][0] for j in range(i)])
        m_l = _rk_sum(ml_n, dt, a[i, :i], [Fm[j][1] for j in range(i)])
        Ig_star = _rk_sum(Ig_n, dt, a[i, :i], [FI[j][0] for j in range(i)])
        Il_star = _rk_sum(Il_n, dt, a[i, :i], [FI[j][1] for j in range(i)])
        for j in range(i - 1):
            if a[i, j] != 0.0:
                Ig_star -= dt * a[i, j] * hp[j][0]
                Il_star -= dt * a[i, j] * hp[j][1]
        model.apply_momentum_bc(Ig_star, Il_star, ti)

        rhs = model.c1_residual(Ig_star, Il_star)
        if drift_correction:
            # make the next mass stage (row a_{i+1}, or b for the last)
            # satisfy the volume constraint exactly
            row = a[i + 1] if i + 1 < s else b
            eta = -vol0 / dt
            for j in range(i):
                eta += row[j] * c1[j]
            eta /= row[i]
            rhs = rhs + eta
        I_g, I_l, p_stage = poisson(i - 1, Ig_star, Il_star, rhs,
                                    a[i, i - 1] * dt)

        if bounded:
            mb_g = _rk_sum(mbg_n, dt, a[i, :i], [G[j][0] for j in range(i)])
            mb_l = _rk_sum(mbl_n, dt, a[i, :i], [G[j][1] for j in range(i)])
        else:
            mb_g = mb_l = None
        stage[i] = (m_g, m_l, mb_g, mb_l, I_g, I_l)
        Fm[i] = model.mass_rhs(I_g, I_l)
        FI[i] = model.momentum_rhs(m_g, m_l, mb_g, mb_l, I_g, I_l, ti)
        c1[i] = model.c1_residual(I_g, I_l)

    # final update
    t_new = tn + dt
    m_g = _rk_sum(mg_n, dt, b, [Fm[j][0] for j in range(s)])
    m_l = _rk_sum(ml_n, dt, b, [Fm[j][1] for j in range(s)])
    Ig_star = _rk_sum(Ig_n, dt, b, [FI[j][0] for j in range(s)])
    Il_star = _rk_sum(Il_n, dt, b, [FI[j][1] for j in range(s)])
    for j in range(s - 1):
        if b[j] != 0.0:
            Ig_star -= dt * b[j] * hp[j][0]
            Il_star -= dt * b[j] * hp[j][1]
    model.apply_momentum_bc(Ig_star, Il_star, t_new)

    rhs = model.c1_residual(Ig_star, Il_star)
    vol_new = model.volume_residual(m_g, m_l)
    if drift_correction:
        # make the first mass stage of the next step constraint-consistent
        rhs = rhs - vol_new / (dt * a[1, 0])
    I_g, I_l, p_new = poisson(s - 1, Ig_star, Il_star, rhs, b[s - 1] * dt)

    if bounded:
        mb_g = _rk_sum(mbg_n, dt, b, [G[j][0] for j in range(s)])
        mb_l = _rk_sum(mbl_n, dt, b, [G[j][1] for j in range(s)])
    else:
        mb_g = mb_l = None

    new_state = State(t=t_new, m_g=m_g, m_l=m_l, I_g=I_g, I_l=I_l,
                      p=p_new, mb_g=mb_g, mb_l=mb_l)
    info = {"cg_iters": cg_iters,
            "volume_residual_inf": float(np.max(np.abs(vol_new)))}
    return new_state, info


def consistent_init(model, state, cg_config=None):
    """Project an initial guess onto all constraints.

    1. Rescale the phase masses (keeping the hold-up ratio) so the volume
       constraint Q m = A holds exactly, cell by cell and at the boundary
       faces.
    2. Impose the strong boundary momentum values.
    3. Remove the volumetric-flow constraint residual from the momenta by
       one pressure projection.
    4. Recover the initial pressure from the constraint L p = M F_I + rdot.
    """
    if cg_config is None:
        cg_config = CGConfig()
    st = state.copy()
    fl = model.fluids
    A = model.geom.A

    def rescale(m_g, m_l):
        vg = m_g / fl.rho_g
        vl = m_l / fl.rho_l
        alpha = vl / (vl + vg)
        return fl.rho_g * (1.0 - alpha) * A, fl.rho_l * alpha * A

    st.m_g, st.m_l = rescale(st.m_g, st.m_l)
    if st.mb_g is not None:
        st.mb_g, st.mb_l = rescale(st.mb_g, st.mb_l)

    model.apply_momentum_bc(st.I_g, st.I_l, st.t)

    op = model.assemble_laplacian(st.m_g, st.m_l, st.mb_g, st.mb_l)
    phi = model.poisson_solve(op, model.c1_residual(st.I_g, st.I_l), cg_config)
    Hphi_g, Hphi_l = model.pressure_gradient(st.m_g, st.m_l,
                                             st.mb_g, st.mb_l, phi)
    st.I_g = st.I_g - Hphi_g
    st.I_l = st.I_l - Hphi_l

    st.p = model.solve_pressure_constraint(st, cg_config)
    return st


def pressure_postprocess(model, state, cg_config=None):
    """Pressure consistent with the current state (removes the first-order
    time lag of the stage pressure returned by `step`)."""
    if cg_config is None:
        cg_config = CGConfig()
    return model.solve_pressure_constraint(state, cg_config, x0=state.p)


def cfl_timestep(model, state, courant=0.5):
    """dt = courant * min(ds) / max characteristic speed over the faces."""
    from . import geometry
    from .characteristics import eigenvalues

    fm_g, fm_l = model.face_masses(state.m_g, state.m_l,
                                   state.mb_g, state.mb_l)
    u_g = state.I_g / fm_g
    u_l = state.I_l / fm_l
    sec = geometry.cross_section(model.alpha_of_ml(fm_l), model.geom)
    lam1, lam2, xi_sq = eigenvalues(sec.A_l, sec.A_g, u_l, u_g,
                                    model.fluids, model.g_n, sec.dh_dAl)
    if np.any(xi_sq < 0.0):
        raise RuntimeError("state is ill-posed (inviscid KH bound exceeded)")
    speed = max(np.max(np.abs(lam1)), np.max(np.abs(lam2)))
    if speed == 0.0:
        raise RuntimeError("zero characteristic speed; cannot set a CFL step")
    return courant * float(np.min(model.grid.ds)) / speed

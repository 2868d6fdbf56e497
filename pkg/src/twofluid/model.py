"""Staggered-grid semi-discrete two-fluid model.

Layout: N pressure volumes (cell centers carry masses m_g, m_l per unit
length and the pressure p) and velocity volumes centered on the cell faces
(carrying the momenta I_g, I_l per unit length).  Face j sits at
s = j * ds; for a bounded pipe the faces run j = 0..N (N+1 momentum
nodes), for a periodic one j = 0..N-1 with face 0 identified with face N.

Boundary faces of a bounded pipe carry, in addition to the momenta, their
own phase masses (mb_g, mb_l) which evolve by the characteristic hold-up
equation; they supply the velocity and hold-up values needed by the
convective fluxes and by the outflow half-volume.

The semi-discrete system reads

    d(m)/dt = F_m(I)                        (exact flux differences)
    d(I)/dt = F_I(m, I, t) - H(m) p         (central convective fluxes)
    Q m = A                                 (volume constraint, C0)

with hidden constraints M I + r = 0 (C1) and L p = M F_I + rdot (C2),
L = M H.  Here boundary fluxes are folded into the full face vectors, so
M I + r is evaluated as the mixture divergence of the complete I arrays.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import closures, geometry
from .boundary import BoundarySpec
from .characteristics import eigenvalues_scalar, one_sided_derivative
from .linsolve import PoissonOperator, solve as cg_solve


@dataclass(frozen=True)
class Grid:
    """1-D staggered grid with N pressure volumes on [0, L]."""

    N: int
    L: float
    periodic: bool = False

    def __post_init__(self):
        if self.N < 3:
            raise ValueError("need at least 3 pressure volumes")

    @property
    def ds(self):
        return np.full(self.N, self.L / self.N)

    @property
    def s_cells(self):
        return (np.arange(self.N) + 0.5) * (self.L / self.N)

    @property
    def s_faces(self):
        n_faces = self.N if self.periodic else self.N + 1
        return np.arange(n_faces) * (self.L / self.N)

    @property
    def n_faces(self):
        return self.N if self.periodic else self.N + 1

    @property
    def ds_stag(self):
        """Velocity-volume widths; boundary faces get half volumes."""
        h = self.L / self.N
        if self.periodic:
            return np.full(self.N, h)
        w = np.full(self.N + 1, h)
        w[0] = w[-1] = 0.5 * h
        return w


@dataclass
class State:
    """Solution snapshot: cell masses, face momenta, cell pressures.

    mb_g / mb_l hold the boundary-face masses per unit length of a bounded
    pipe, index 0 = left end, 1 = right end; None for periodic topology.
    """

    t: float
    m_g: np.ndarray
    m_l: np.ndarray
    I_g: np.ndarray
    I_l: np.ndarray
    p: np.ndarray
    mb_g: Optional[np.ndarray] = None
    mb_l: Optional[np.ndarray] = None

    def copy(self):
        return State(t=self.t,
                     m_g=self.m_g.copy(), m_l=self.m_l.copy(),
                     I_g=self.I_g.copy(), I_l=self.I_l.copy(),
                     p=self.p.copy(),
                     mb_g=None if self.mb_g is None else self.mb_g.copy(),
                     mb_l=None if self.mb_l is None else self.mb_l.copy())


class TwoFluidModel:
    """Spatially discrete two-fluid model bound to a grid, fluids and BCs.

    Optional hooks:
      body_force(s, t)      volumetric force field [N/m^3] added to both
                            phase momentum equations (times A_beta)
      face_forcing(t)       extra per-unit-length momentum sources
                            (q_g, q_l) on all faces (manufactured solutions)
      holdup_forcing(t)     additive correction (left, right) to the
                            characteristic dA_l/dt at the boundary faces
    """

    def __init__(self, grid, geom, fluids, bc, g=9.8, friction="churchill",
                 interfacial="gas-wall", body_force=None, face_forcing=None,
                 holdup_forcing=None):
        if grid.periodic != bc.periodic:
            raise ValueError("grid topology and boundary spec disagree")
        self.grid = grid
        self.geom = geom
        self.fluids = fluids
        self.bc = bc
        self.g = g
        self.g_n = g * np.cos(geom.phi)
        self.g_s = g * np.sin(geom.phi)
        self.friction = friction
        self.interfacial = interfacial
        self.body_force = body_force
        self.face_forcing = face_forcing
        self.holdup_forcing = holdup_forcing
        # central-difference step for numeric signal derivatives; the time
        # stepper sets this to dt/100
        self.deriv_h = None
        self._ds = grid.ds
        self._ds_stag = grid.ds_stag

    # ----- small helpers ------------------------------------------------

    def alpha_of_ml(self, m_l):
        return m_l / (self.fluids.rho_l * self.geom.A)

    def face_masses(self, m_g, m_l, mb_g, mb_l):
        """Phase masses at the momentum nodes (arithmetic cell averages)."""
        if self.grid.periodic:
            fg = 0.5 * (np.roll(m_g, 1) + m_g)
            fl = 0.5 * (np.roll(m_l, 1) + m_l)
            return fg, fl
        fg = np.empty(self.grid.N + 1)
        fl = np.empty(self.grid.N + 1)
        fg[1:-1] = 0.5 * (m_g[:-1] + m_g[1:])
        fl[1:-1] = 0.5 * (m_l[:-1] + m_l[1:])
        fg[0], fg[-1] = mb_g
        fl[0], fl[-1] = mb_l
        return fg, fl

    def _body_force(self, s, t):
        if self.body_force is None:
            return 0.0
        return self.body_force(s, t)

    # ----- semi-discrete right-hand sides -------------------------------

    def mass_rhs(self, I_g, I_l):
        """F_m per phase: minus the exact momentum-flux difference."""
        if self.grid.periodic:
            fg = -(np.roll(I_g, -1) - I_g) / self._ds
            fl = -(np.roll(I_l, -1) - I_l) / self._ds
        else:
            fg = -np.diff(I_g) / self._ds
            fl = -np.diff(I_l) / self._ds
        return fg, fl

    def momentum_rhs(self, m_g, m_l, mb_g, mb_l, I_g, I_l, t,
                     include_forcing=True):
        """Pressure-free momentum RHS on all faces.

        Interior faces get the full finite-volume stencil.  Boundary-face
        slots are filled with the known time derivative of the momentum
        there: the inflow signal derivative (strong and weak), zero at a
        wall, and the half-volume momentum balance (with the prescribed
        outlet pressure contribution, but not the interior-pressure term,
        which belongs to H) at an outflow.
        """
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        fm_g, fm_l = self.face_masses(m_g, m_l, mb_g, mb_l)
        u_g = I_g / fm_g
        u_l = I_l / fm_l

        cells = geometry.cross_section(self.alpha_of_ml(m_l), self.geom)
        K_g, K_l = geometry.level_potential(cells, self.geom, self.fluids, self.g_n)

        faces = geometry.cross_section(self.alpha_of_ml(fm_l), self.geom)
        Fb = self._body_force(self.grid.s_faces, t)
        S_g, S_l = closures.source_terms(u_g, u_l, faces, self.fluids,
                                         self.geom, self.g_s, Fb,
                                         self.friction, self.interfacial)
        if include_forcing and self.face_forcing is not None:
            q_g, q_l = self.face_forcing(t)
            S_g = S_g + q_g
            S_l = S_l + q_l

        if self.grid.periodic:
            # u at cell centers (central average of the adjacent faces)
            ug_c = 0.5 * (u_g + np.roll(u_g, -1))
            ul_c = 0.5 * (u_l + np.roll(u_l, -1))
            phi_g = m_g * ug_c**2
            phi_l = m_l * ul_c**2
            dstag = self._ds_stag
            FI_g = (-(phi_g - np.roll(phi_g, 1)) + (K_g - np.roll(K_g, 1))) / dstag + S_g
            FI_l = (-(phi_l - np.roll(phi_l, 1)) + (K_l - np.roll(K_l, 1))) / dstag + S_l
            return FI_g, FI_l

        N = self.grid.N
        ug_c = 0.5 * (u_g[:-1] + u_g[1:])
        ul_c = 0.5 * (u_l[:-1] + u_l[1:])
        phi_g = m_g * ug_c**2
        phi_l = m_l * ul_c**2

        FI_g = np.empty(N + 1)
        FI_l = np.empty(N + 1)
        dstag = self._ds_stag[1:-1]
        FI_g[1:-1] = (-np.diff(phi_g) + np.diff(K_g)) / dstag + S_g[1:-1]
        FI_l[1:-1] = (-np.diff(phi_l) + np.diff(K_l)) / dstag + S_l[1:-1]

        left, right = self.bc.left, self.bc.right
        # left boundary slot
        if left.kind == "wall":
            FI_g[0] = FI_l[0] = 0.0
        else:  # inflow (strong or weak): known signal derivative
            FI_g[0] = left.I_g.derivative(t, self.deriv_h)
            FI_l[0] = left.I_l.derivative(t, self.deriv_h)
        # right boundary slot
        if right.kind == "wall":
            FI_g[-1] = FI_l[-1] = 0.0
        elif right.kind == "outflow":
            ds_half = self._ds_stag[-1]
            A_gb = mb_g[1] / rho_g
            A_lb = mb_l[1] / rho_l
            phi_gb = mb_g[1] * u_g[-1]**2
            phi_lb = mb_l[1] * u_l[-1]**2
            bsec = geometry.cross_section(self.alpha_of_ml(np.array([mb_l[1]])),
                                          self.geom)
            Kb_g, Kb_l = geometry.level_potential(bsec, self.geom, self.fluids,
                                                  self.g_n)
            p_out = right.p_out.value(t)
            FI_g[-1] = ((-(phi_gb - phi_g[-1]) + (Kb_g[0] - K_g[-1])) / ds_half
                        + S_g[-1] - A_gb * p_out / ds_half)
            FI_l[-1] = ((-(phi_lb - phi_l[-1]) + (Kb_l[0] - K_l[-1])) / ds_half
                        + S_l[-1] - A_lb * p_out / ds_half)
        else:
            raise ValueError(f"unsupported right-end condition {right.kind!r}")
        return FI_g, FI_l

    def pressure_gradient(self, m_g, m_l, mb_g, mb_l, p):
        """H(m) p per phase on all faces.

        Zero at inflow/wall faces (no interior pressure difference acts
        there); the outflow face couples to the last cell pressure only,
        the prescribed outlet value being part of F_I.
        """
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        fm_g, fm_l = self.face_masses(m_g, m_l, mb_g, mb_l)
        if self.grid.periodic:
            dp = (p - np.roll(p, 1)) / self._ds_stag
            return (fm_g / rho_g) * dp, (fm_l / rho_l) * dp
        N = self.grid.N
        Hp_g = np.zeros(N + 1)
        Hp_l = np.zeros(N + 1)
        dp = np.diff(p) / self._ds_stag[1:-1]
        Hp_g[1:-1] = (fm_g[1:-1] / rho_g) * dp
        Hp_l[1:-1] = (fm_l[1:-1] / rho_l) * dp
        if self.bc.right.kind == "outflow":
            ds_half = self._ds_stag[-1]
            Hp_g[-1] = -(mb_g[1] / rho_g) * p[-1] / ds_half
            Hp_l[-1] = -(mb_l[1] / rho_l) * p[-1] / ds_half
        return Hp_g, Hp_l

    def mixture_div(self, X_g, X_l):
        """Q D applied to full face vectors: per-cell mixture divergence."""
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        if self.grid.periodic:
            return ((np.roll(X_g, -1) - X_g) / rho_g
                    + (np.roll(X_l, -1) - X_l) / rho_l) / self._ds
        return (np.diff(X_g) / rho_g + np.diff(X_l) / rho_l) / self._ds

    def c1_residual(self, I_g, I_l):
        """Volumetric-flow constraint residual M I + r (boundary fluxes folded)."""
        return self.mixture_div(I_g, I_l)

    def volume_residual(self, m_g, m_l):
        """Volume constraint residual Q m - A per cell."""
        return m_g / self.fluids.rho_g + m_l / self.fluids.rho_l - self.geom.A

    # ----- pressure operator --------------------------------------------

    def assemble_laplacian(self, m_g, m_l, mb_g=None, mb_l=None):
        """Volume-scaled symmetric pressure operator diag(ds) L(m)."""
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        fm_g, fm_l = self.face_masses(m_g, m_l, mb_g, mb_l)
        if np.any(fm_g <= 0) or np.any(fm_l <= 0):
            raise ValueError("non-positive averaged hold-up in pressure operator")
        w = fm_g / rho_g**2 + fm_l / rho_l**2   # face mixture area / density
        tcoef = w / self._ds_stag
        N = self.grid.N
        if self.grid.periodic:
            diag = -(tcoef + np.roll(tcoef, -1))
            lower = tcoef.copy()
            return PoissonOperator(diag, lower, cyclic=True, singular=True)
        lower = np.zeros(N)
        diag = np.zeros(N)
        inner = tcoef[1:-1]                      # interior faces 1..N-1
        lower[1:] = inner
        diag[:-1] -= inner
        diag[1:] -= inner
        singular = True
        if self.bc.right.kind == "outflow":
            diag[-1] -= tcoef[-1]
            singular = False
        return PoissonOperator(diag, lower, cyclic=False, singular=singular)

    def poisson_solve(self, op, rhs, cg_config, x0=None):
        """Solve L x = rhs given the ds-scaled symmetric operator."""
        x, _ = cg_solve(op, self._ds * rhs, cg_config, x0=x0)
        return x

    # ----- boundary treatment -------------------------------------------

    def apply_momentum_bc(self, I_g, I_l, t):
        """Overwrite strongly-imposed boundary momentum slots in place."""
        if self.grid.periodic:
            return
        left, right = self.bc.left, self.bc.right
        if left.kind == "wall":
            I_g[0] = I_l[0] = 0.0
        elif left.kind == "inflow_strong":
            I_g[0] = left.I_g.value(t)
            I_l[0] = left.I_l.value(t)
        if right.kind == "wall":
            I_g[-1] = I_l[-1] = 0.0

    def _end_sources(self, idx, alpha_b, u_gb, u_lb, t):
        """Momentum sources per unit length at one boundary face."""
        sec = geometry.cross_section(np.asarray(alpha_b), self.geom)
        s_b = self.grid.s_faces[-1] if idx else self.grid.s_faces[0]
        Fb = self._body_force(s_b, t)
        S_g, S_l = closures.source_terms(u_gb, u_lb, sec, self.fluids,
                                         self.geom, self.g_s, Fb,
                                         self.friction, self.interfacial)
        if self.face_forcing is not None:
            q_g, q_l = self.face_forcing(t)
            S_g = S_g + q_g[-1 if idx else 0]
            S_l = S_l + q_l[-1 if idx else 0]
        return sec, S_g, S_l

    def holdup_rate_end(self, side, m_g, m_l, mb_g, mb_l, I_g, I_l,
                        Idot_g, Idot_l, t, include_correction=True):
        """Characteristic dA_l/dt at one end ('left' or 'right').

        Idot_g / Idot_l are the known momentum time derivatives at that
        boundary face (signal derivatives at an inflow, zero at a wall,
        the half-volume momentum balance at an outflow).
        """
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        left = side == "left"
        idx = 0 if left else 1
        face = 0 if left else -1
        alpha_b = self.alpha_of_ml(mb_l[idx])
        fm_g, fm_l = mb_g[idx], mb_l[idx]
        u_gb = I_g[face] / fm_g
        u_lb = I_l[face] / fm_l
        sec, S_g, S_l = self._end_sources(idx, alpha_b, u_gb, u_lb, t)
        A_gb = float(sec.A_g)
        A_lb = float(sec.A_l)
        eig = eigenvalues_scalar(A_lb, A_gb, u_lb, u_gb, self.fluids,
                                 self.g_n, float(sec.dh_dAl))
        if not eig.well_posed:
            raise RuntimeError(f"ill-posed state at {side} boundary (t={t:g})")
        if not (eig.lambda1 < 0.0 < eig.lambda2):
            raise RuntimeError(
                f"boundary flow not subcritical at {side} end (t={t:g}): "
                f"lambda1={eig.lambda1:g}, lambda2={eig.lambda2:g}")

        # one-sided slopes at the boundary.  At inflow/outflow ends the
        # hold-up slope uses the boundary value plus the two nearest cells
        # (second order) while the velocity slopes use the two nearest
        # interior faces only: the outgoing-characteristic data then comes
        # purely from the interior, and the boundary face velocity feeds
        # no slope back into its own hold-up equation (a quadratic stencil
        # through a freely evolving boundary value makes that feedback
        # loop linearly unstable).  At a wall both velocities vanish and
        # the outgoing characteristic carries pure hold-up information;
        # there the hold-up slope drops the boundary value too, because
        # its self-coupling term scales like |lambda|/ds and turns the
        # boundary-mass equation stiff on fine grids.
        end = self.bc.left if left else self.bc.right
        wall = end.kind == "wall"
        sf = self.grid.s_faces
        sc = self.grid.s_cells
        fmg_all, fml_all = self.face_masses(m_g, m_l, mb_g, mb_l)
        u_g_all = I_g / fmg_all
        u_l_all = I_l / fml_all
        if left:
            if wall:
                # quadratic through the three nearest cells, evaluated at
                # the wall face (uniform spacing): (-2 f0 + 3 f1 - f2)/ds
                dAl = (-2.0 * m_l[0] + 3.0 * m_l[1] - m_l[2]) \
                    / (rho_l * (sc[1] - sc[0]))
            else:
                dAl = one_sided_derivative(
                    (sf[0], sc[0], sc[1]),
                    (A_lb, m_l[0] / rho_l, m_l[1] / rho_l))
            du_ds = 1.0 / (sf[2] - sf[1])
            dug = (u_g_all[2] - u_g_all[1]) * du_ds
            dul = (u_l_all[2] - u_l_all[1]) * du_ds
        else:
            if wall:
                dAl = (2.0 * m_l[-1] - 3.0 * m_l[-2] + m_l[-3]) \
                    / (rho_l * (sc[-1] - sc[-2]))
            else:
                dAl = one_sided_derivative(
                    (sf[-1], sc[-1], sc[-2]),
                    (A_lb, m_l[-1] / rho_l, m_l[-2] / rho_l))
            du_ds = 1.0 / (sf[-2] - sf[-3])
            dug = (u_g_all[-2] - u_g_all[-3]) * du_ds
            dul = (u_l_all[-2] - u_l_all[-3]) * du_ds

        V1 = eig.xi * dAl - rho_l * dul + rho_g * dug
        V2 = -eig.xi * dAl - rho_l * dul + rho_g * dug
        idot = -Idot_l / A_lb + Idot_g / A_gb
        dS = S_l / A_lb - S_g / A_gb
        rho_star = eig.rho_star
        if left:
            # outgoing wave lambda1: V1 known from the interior
            dAl_dt = -(idot + eig.lambda1 * V1 + dS) / (rho_star * eig.lambda2)
        else:
            # outgoing wave lambda2: V2 known from the interior
            dAl_dt = -(idot + eig.lambda2 * V2 + dS) / (rho_star * eig.lambda1)
        dAl_dt = float(dAl_dt)
        if include_correction and self.holdup_forcing is not None:
            dAl_dt += self.holdup_forcing(t)[idx]
        return dAl_dt

    def boundary_rates(self, m_g, m_l, mb_g, mb_l, I_g, I_l,
                       Idot_g_faces, Idot_l_faces, t, deriv_h=None):
        """Boundary-face mass rates (dmb_g/dt, dmb_l/dt), shape (2,) each."""
        rho_g, rho_l = self.fluids.rho_g, self.fluids.rho_l
        if deriv_h is None:
            deriv_h = self.deriv_h
        dmb_g = np.zeros(2)
        dmb_l = np.zeros(2)
        for side, end in (("left", self.bc.left), ("right", self.bc.right)):
            idx = 0 if side == "left" else 1
            face = 0 if side == "left" else -1
            if end.kind == "wall":
                idg = idl = 0.0
            elif end.kind in ("inflow_strong", "inflow_weak"):
                idg = end.I_g.derivative(t, deriv_h)
                idl = end.I_l.derivative(t, deriv_h)
            else:  # outflow: use the supplied momentum balance
                idg = Idot_g_faces[face]
                idl = Idot_l_faces[face]
            dAl_dt = self.holdup_rate_end(side, m_g, m_l, mb_g, mb_l,
                                          I_g, I_l, idg, idl, t)
            dmb_g[idx] = -rho_g * dAl_dt
            dmb_l[idx] = rho_l * dAl_dt
        return dmb_g, dmb_l

    # ----- pressure constraint ------------------------------------------

    def pressure_rhs(self, state_t, m_g, m_l, mb_g, mb_l, I_g, I_l):
        """Right-hand side M F_I + rdot of the pressure constraint C2."""
        FI_g, FI_l = self.momentum_rhs(m_g, m_l, mb_g, mb_l, I_g, I_l, state_t)
        return self.mixture_div(FI_g, FI_l)

    def solve_pressure_constraint(self, state, cg_config, x0=None):
        """Pressure from L p = M F_I + rdot at the given state."""
        rhs = self.pressure_rhs(state.t, state.m_g, state.m_l,
                                state.mb_g, state.mb_l, state.I_g, state.I_l)
        op = self.assemble_laplacian(state.m_g, state.m_l, state.mb_g, state.mb_l)
        return self.poisson_solve(op, rhs, cg_config, x0=x0)

    # ----- diagnostics ---------------------------------------------------

    def primitives(self, state):
        """(alpha_l cells, u_g faces, u_l faces) for reporting."""
        fm_g, fm_l = self.face_masses(state.m_g, state.m_l,
                                      state.mb_g, state.mb_l)
        return (self.alpha_of_ml(state.m_l),
                state.I_g / fm_g, state.I_l / fm_l)

    def total_mass(self, state):
        """Domain-integrated phase masses (gas, liquid)."""
        mg = float(state.m_g @ self._ds)
        ml = float(state.m_l @ self._ds)
        return mg, ml

"""Cross-sectional geometry of stratified flow in a circular pipe.

The liquid occupies a circular segment characterized by the wetted angle
gamma_l (half-angle subtended by the liquid at the pipe center).  All
quantities are expressed in terms of gamma_l and the pipe diameter:

    P_gl = D sin(gamma_l)           interfacial perimeter (chord)
    P_l  = D gamma_l                liquid-wall perimeter
    P_g  = D (pi - gamma_l)         gas-wall perimeter
    h    = D (1 - cos(gamma_l))/2   interface height above the bottom

The exact hold-up/angle relation is alpha_l = (gamma - sin(gamma)cos(gamma))/pi;
its inverse is approximated in closed form (Biberg) or by bisection.
"""

from dataclasses import dataclass

import numpy as np

# Hold-up clamping limit used to keep dh/dA_l = 1/P_gl finite near dry-out.
ALPHA_MIN = 1e-6
ALPHA_TOL = 1e-12


@dataclass(frozen=True)
class PipeGeometry:
    """Static pipe parameters: radius, length, inclination, wall roughness."""

    R: float                 # pipe radius [m]
    L: float                 # pipe length [m]
    phi: float = 0.0         # inclination from horizontal [rad]
    eps_wall: float = 0.0    # hydraulic roughness [m]

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("pipe radius must be positive")
        if self.L <= 0:
            raise ValueError("pipe length must be positive")
        if self.eps_wall < 0:
            raise ValueError("roughness must be non-negative")

    @property
    def D(self):
        return 2.0 * self.R

    @property
    def A(self):
        return np.pi * self.R**2


@dataclass
class CrossSection:
    """Stratified cross-section quantities at one or more hold-up values.

    All fields are numpy arrays (or scalars) broadcast from alpha_l.
    ``degenerate`` is True where the input hold-up had to be clamped.
    """

    alpha_l: np.ndarray
    gamma_l: np.ndarray
    A_l: np.ndarray
    A_g: np.ndarray
    P_l: np.ndarray
    P_g: np.ndarray
    P_gl: np.ndarray
    h: np.ndarray
    dh_dAl: np.ndarray
    degenerate: np.ndarray


def alpha_from_angle(gamma_l):
    """Exact hold-up fraction of a circular segment with wetted angle gamma_l."""
    gamma_l = np.asarray(gamma_l, dtype=float)
    return (gamma_l - np.sin(gamma_l) * np.cos(gamma_l)) / np.pi


def wetted_angle(alpha_l, tol=ALPHA_TOL):
    """Wetted angle gamma_l for liquid fraction alpha_l (Biberg approximation).

    The closed-form approximation is accurate to a few mrad over [0, 1]
    and exact at alpha_l in {0, 1/2, 1}.  The result is clamped to [0, pi].
    """
    a = np.asarray(alpha_l, dtype=float)
    if np.any(a < -tol) or np.any(a > 1.0 + tol):
        raise ValueError("alpha_l outside [0, 1]")
    al = np.clip(a, 0.0, 1.0)
    ag = 1.0 - al
    c = (1.5 * np.pi) ** (1.0 / 3.0)
    gamma = (np.pi * al
             + c * (ag - al + np.cbrt(al) - np.cbrt(ag))
             - (1.0 / 200.0) * al * ag * (ag - al) * (1.0 + 4.0 * (al**2 + ag**2)))
    return np.clip(gamma, 0.0, np.pi)


def wetted_angle_exact(alpha_l, tol=1e-14, max_iter=200):
    """Invert alpha_l = (gamma - sin(gamma)cos(gamma))/pi by bisection.

    Slow but certain; used as an oracle for the Biberg approximation.
    """
    a = np.asarray(alpha_l, dtype=float)
    lo = np.zeros_like(a)
    hi = np.full_like(a, np.pi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        too_low = alpha_from_angle(mid) < a
        lo = np.where(too_low, mid, lo)
        hi = np.where(too_low, hi, mid)
        if np.max(hi - lo) < tol:
            break
    return 0.5 * (lo + hi)


def cross_section(alpha_l, geom, alpha_min=ALPHA_MIN, exact=False):
    """All stratified-geometry quantities for hold-up alpha_l.

    Near-empty/near-full sections are clamped to [alpha_min, 1 - alpha_min]
    so that the interfacial chord P_gl stays positive and dh/dA_l = 1/P_gl
    remains finite; such entries are flagged degenerate.
    """
    a = np.asarray(alpha_l, dtype=float)
    degenerate = (a < alpha_min) | (a > 1.0 - alpha_min)
    al = np.clip(a, alpha_min, 1.0 - alpha_min)
    gamma = wetted_angle_exact(al) if exact else wetted_angle(al)
    D = geom.D
    P_gl = D * np.sin(gamma)
    P_l = D * gamma
    P_g = D * (np.pi - gamma)
    h = 0.5 * D * (1.0 - np.cos(gamma))
    A_l = al * geom.A
    A_g = geom.A - A_l
    dh_dAl = 1.0 / P_gl
    return CrossSection(alpha_l=al, gamma_l=gamma, A_l=A_l, A_g=A_g,
                        P_l=P_l, P_g=P_g, P_gl=P_gl, h=h,
                        dh_dAl=dh_dAl, degenerate=degenerate)


def level_potential(section, geom, fluids, g_n):
    """Level-gradient potentials (K_g, K_l).

    The hydrostatic level-gradient terms in the momentum equations are
    E_beta = dK_beta/ds with
        K_g = rho_g g_n [ (R - h) A_g + P_gl^3 / 12 ]
        K_l = rho_l g_n [ (R - h) A_l - P_gl^3 / 12 ]
    The cubic terms cancel in K_g/rho_g + K_l/rho_l = g_n (R - h) A.
    """
    head = geom.R - section.h
    cube = section.P_gl**3 / 12.0
    K_g = fluids.rho_g * g_n * (head * section.A_g + cube)
    K_l = fluids.rho_l * g_n * (head * section.A_l - cube)
    return K_g, K_l

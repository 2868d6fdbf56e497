"""Algebraic momentum sources: wall/interfacial shear, gravity, body force.

Shear stresses use the Fanning definition tau = (1/2) f rho u |u| with the
Churchill friction factor (valid across laminar and turbulent regimes) or a
purely laminar f = 16/Re closure.  The interfacial factor follows the
floor rule f_gl = max(f_g, 0.014).
"""

from dataclasses import dataclass

import numpy as np

# Reynolds floor guarding Churchill against division by zero; the stress
# product rho u |u| vanishes faster than f blows up, so this floor is inert.
RE_FLOOR = 1e-8
F_GL_MIN = 0.014


@dataclass(frozen=True)
class FluidProps:
    """Constant phase densities and viscosities."""

    rho_g: float   # gas density [kg/m^3]
    rho_l: float   # liquid density [kg/m^3]
    mu_g: float    # gas dynamic viscosity [Pa s]
    mu_l: float    # liquid dynamic viscosity [Pa s]

    def __post_init__(self):
        if min(self.rho_g, self.rho_l, self.mu_g, self.mu_l) <= 0:
            raise ValueError("fluid properties must be strictly positive")
        if self.rho_l <= self.rho_g:
            raise ValueError("stable stratification requires rho_l > rho_g")


def hydraulic_diameter(section):
    """Hydraulic diameters (D_hg, D_hl) of the gas and liquid sub-channels.

    The gas perimeter includes the interface (the faster phase sees the
    interface as a wall); the liquid perimeter does not.
    """
    D_hl = 4.0 * section.A_l / section.P_l
    D_hg = 4.0 * section.A_g / (section.P_g + section.P_gl)
    return D_hg, D_hl


def churchill_friction(Re, rel_rough=0.0):
    """Fanning friction factor by Churchill's composite correlation.

    f = 2 ((8/Re)^12 + (A + B)^(-1.5))^(1/12)
    A = (2.457 ln(((7/Re)^0.9 + 0.27 eps/D_h)^-1))^16
    B = (37530/Re)^16

    Recovers f ~ 16/Re in the laminar range and a Colebrook-like curve in
    the turbulent range, with a smooth transition.
    """
    Re = np.asarray(Re, dtype=float)
    if np.any(Re <= 0):
        raise ValueError("Reynolds number must be positive")
    with np.errstate(over="ignore"):
        a_term = (2.457 * np.log(1.0 / ((7.0 / Re) ** 0.9 + 0.27 * rel_rough))) ** 16
        b_term = (37530.0 / Re) ** 16
        f = 2.0 * ((8.0 / Re) ** 12 + (a_term + b_term) ** -1.5) ** (1.0 / 12.0)
    return f


def laminar_friction(Re, rel_rough=0.0):
    """Fanning friction factor for laminar pipe flow, f = 16/Re."""
    Re = np.asarray(Re, dtype=float)
    if np.any(Re <= 0):
        raise ValueError("Reynolds number must be positive")
    return 16.0 / Re


FRICTION_MODELS = {
    "churchill": churchill_friction,
    "laminar": laminar_friction,
}


def interfacial_friction(f_g):
    """Interfacial Fanning factor: the gas wall factor with a 0.014 floor."""
    return np.maximum(f_g, F_GL_MIN)


def shear_stresses(u_g, u_l, section, fluids, geom, friction="churchill",
                   interfacial="gas-wall"):
    """Wall and interfacial shear stresses (tau_g, tau_l, tau_gl) [Pa].

    tau_gl is positive when the gas drags the liquid forward (u_g > u_l).
    interfacial="gas-wall" floors the gas wall factor at 0.014;
    interfacial="constant" pins the factor at that floor value, which keeps
    the sources smooth through gas flow reversals (the factor equals the
    floor anyway except at very small gas velocity).
    """
    fric = FRICTION_MODELS[friction]
    D_hg, D_hl = hydraulic_diameter(section)
    Re_g = np.maximum(fluids.rho_g * np.abs(u_g) * D_hg / fluids.mu_g, RE_FLOOR)
    Re_l = np.maximum(fluids.rho_l * np.abs(u_l) * D_hl / fluids.mu_l, RE_FLOOR)
    f_g = fric(Re_g, geom.eps_wall / D_hg)
    f_l = fric(Re_l, geom.eps_wall / D_hl)
    if interfacial == "constant":
        f_gl = F_GL_MIN
    elif interfacial == "gas-wall":
        f_gl = interfacial_friction(f_g)
    else:
        raise ValueError(f"unknown interfacial friction model {interfacial!r}")
    tau_g = 0.5 * f_g * fluids.rho_g * u_g * np.abs(u_g)
    tau_l = 0.5 * f_l * fluids.rho_l * u_l * np.abs(u_l)
    du = u_g - u_l
    tau_gl = 0.5 * f_gl * fluids.rho_g * du * np.abs(du)
    return tau_g, tau_l, tau_gl


def source_terms(u_g, u_l, section, fluids, geom, g_s, F_body=0.0,
                 friction="churchill", interfacial="gas-wall"):
    """Momentum sources per unit length (S_g, S_l) [N/m].

    S_g = -tau_gl P_gl - tau_g P_g - rho_g A_g g_s + F_body A_g
    S_l = +tau_gl P_gl - tau_l P_l - rho_l A_l g_s + F_body A_l

    F_body is a force per unit volume (e.g. a driving pressure gradient
    with reversed sign for periodic problems).
    """
    tau_g, tau_l, tau_gl = shear_stresses(u_g, u_l, section, fluids, geom,
                                          friction, interfacial)
    S_g = (-tau_gl * section.P_gl - tau_g * section.P_g
           - fluids.rho_g * section.A_g * g_s + F_body * section.A_g)
    S_l = (tau_gl * section.P_gl - tau_l * section.P_l
           - fluids.rho_l * section.A_l * g_s + F_body * section.A_l)
    return S_g, S_l

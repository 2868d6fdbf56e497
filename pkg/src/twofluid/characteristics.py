"""Characteristic structure of the incompressible two-fluid model.

After eliminating the pressure, the convective system has two genuine
characteristic speeds

    lambda_{1,2} = (k -/+ ... ) ... = (k -+ xi) / rho*,

with the hold-up-weighted quantities

    rho* = rho_l / A_l + rho_g / A_g,
    k    = rho_l u_l / A_l + rho_g u_g / A_g,
    xi^2 = rho* (rho_l - rho_g) g_n dh/dA_l
           - rho_g rho_l / (A_g A_l) (u_g - u_l)^2.

xi^2 > 0 is the well-posedness (hyperbolicity) condition; its violation is
the inviscid Kelvin-Helmholtz limit.  The same speeds are the roots of

    rho_l A_g (u_l - lam)^2 + rho_g A_l (u_g - lam)^2
        = (rho_l - rho_g) A_g A_l g_n dh/dA_l.

This module also provides the viscous dispersion relation of the
quasi-linear system linearized about a uniform state.
"""

from dataclasses import dataclass

import numpy as np

from . import closures, geometry


@dataclass(frozen=True)
class Eigenstructure:
    rho_star: float
    k: float
    xi_sq: float
    xi: float
    lambda1: float
    lambda2: float
    well_posed: bool


def eigenvalues(A_l, A_g, u_l, u_g, fluids, g_n, dh_dAl):
    """Vectorized (lambda1, lambda2, xi_sq); xi_sq < 0 entries yield nan speeds."""
    rho_g, rho_l = fluids.rho_g, fluids.rho_l
    rho_star = rho_l / A_l + rho_g / A_g
    k = rho_l * u_l / A_l + rho_g * u_g / A_g
    xi_sq = (rho_star * (rho_l - rho_g) * g_n * dh_dAl
             - rho_g * rho_l / (A_g * A_l) * (u_g - u_l) ** 2)
    with np.errstate(invalid="ignore"):
        xi = np.sqrt(xi_sq)
    return (k - xi) / rho_star, (k + xi) / rho_star, xi_sq


def eigenvalues_scalar(A_l, A_g, u_l, u_g, fluids, g_n, dh_dAl):
    """Eigenstructure at a single state."""
    rho_g, rho_l = fluids.rho_g, fluids.rho_l
    rho_star = rho_l / A_l + rho_g / A_g
    k = rho_l * u_l / A_l + rho_g * u_g / A_g
    xi_sq = (rho_star * (rho_l - rho_g) * g_n * dh_dAl
             - rho_g * rho_l / (A_g * A_l) * (u_g - u_l) ** 2)
    well = xi_sq >= 0.0
    xi = np.sqrt(xi_sq) if well else float("nan")
    lam1 = (k - xi) / rho_star
    lam2 = (k + xi) / rho_star
    return Eigenstructure(rho_star=float(rho_star), k=float(k),
                          xi_sq=float(xi_sq), xi=float(xi),
                          lambda1=float(lam1), lambda2=float(lam2),
                          well_posed=bool(well))


def characteristic_polynomial(lam, A_l, A_g, u_l, u_g, fluids, g_n, dh_dAl):
    """Residual of the quadratic characteristic polynomial (oracle form)."""
    rho_g, rho_l = fluids.rho_g, fluids.rho_l
    return (rho_l * A_g * (u_l - lam) ** 2 + rho_g * A_l * (u_g - lam) ** 2
            - (rho_l - rho_g) * A_g * A_l * g_n * dh_dAl)


def one_sided_derivative(xs, fs):
    """Second-order derivative estimate at xs[0] from three scattered nodes."""
    x0, x1, x2 = xs
    f0, f1, f2 = fs
    w0 = (2.0 * x0 - x1 - x2) / ((x0 - x1) * (x0 - x2))
    w1 = (x0 - x2) / ((x1 - x0) * (x1 - x2))
    w2 = (x0 - x1) / ((x2 - x0) * (x2 - x1))
    return w0 * f0 + w1 * f1 + w2 * f2


# ----- linear dispersion analysis ----------------------------------------

def quasi_linear_matrices(W, fluids, geom, g_n):
    """(A_hat, B_hat) of A_hat dW/dt + B_hat dW/ds = S_hat, W = (A_l, u_l, u_g, p)."""
    A_l, u_l, u_g, _ = W
    rho_g, rho_l = fluids.rho_g, fluids.rho_l
    sec = geometry.cross_section(A_l / geom.A, geom)
    A_g = float(sec.A_g)
    dh = float(sec.dh_dAl)
    A_hat = np.array([[1.0, 0.0, 0.0, 0.0],
                      [-1.0, 0.0, 0.0, 0.0],
                      [0.0, rho_l, 0.0, 0.0],
                      [0.0, 0.0, rho_g, 0.0]])
    B_hat = np.array([[u_l, A_l, 0.0, 0.0],
                      [-u_g, 0.0, A_g, 0.0],
                      [rho_l * g_n * dh, rho_l * u_l, 0.0, 1.0],
                      [rho_g * g_n * dh, 0.0, rho_g * u_g, 1.0]])
    return A_hat, B_hat


def source_vector(W, fluids, geom, g_s, F_body=0.0, friction="churchill"):
    """S_hat(W) = (0, 0, S_l/A_l, S_g/A_g) in the quasi-linear variables."""
    A_l, u_l, u_g, _ = W
    sec = geometry.cross_section(np.asarray(A_l / geom.A), geom)
    S_g, S_l = closures.source_terms(u_g, u_l, sec, fluids, geom, g_s,
                                     F_body, friction)
    return np.array([0.0, 0.0, float(S_l / sec.A_l), float(S_g / sec.A_g)])


def source_jacobian(W, fluids, geom, g_s, F_body=0.0, friction="churchill"):
    """C_hat = -dS_hat/dW by central differences."""
    W = np.asarray(W, dtype=float)
    C = np.zeros((4, 4))
    for j in range(4):
        h = max(1e-6, 1e-6 * abs(W[j]))
        Wp = W.copy()
        Wm = W.copy()
        Wp[j] += h
        Wm[j] -= h
        Sp = source_vector(Wp, fluids, geom, g_s, F_body, friction)
        Sm = source_vector(Wm, fluids, geom, g_s, F_body, friction)
        C[:, j] = -(Sp - Sm) / (2.0 * h)
    return C


def dispersion_modes(k_wave, W, fluids, geom, g_n, g_s, F_body=0.0,
                     friction="churchill"):
    """Temporal modes omega of the linearized system at wavenumber k_wave.

    The determinant of M(omega) = i omega A_hat - i k B_hat + C_hat is a
    quadratic in omega (A_hat has rank 3 with one redundant row); its two
    roots are returned sorted by real part, together with the eigenvector
    (nullspace of M) of each mode.  Im(omega) > 0 means growth.
    """
    A_hat, B_hat = quasi_linear_matrices(W, fluids, geom, g_n)
    C_hat = source_jacobian(W, fluids, geom, g_s, F_body, friction)

    def M(om):
        return 1j * om * A_hat - 1j * k_wave * B_hat + C_hat

    # fit det M(omega) = a omega^2 + b omega + c through three samples
    c = np.linalg.det(M(0.0))
    q1 = np.linalg.det(M(1.0))
    qi = np.linalg.det(M(1.0j))
    a, b = np.linalg.solve(np.array([[1.0, 1.0], [-1.0, 1.0j]]),
                           np.array([q1 - c, qi - c]))
    disc = np.sqrt(b * b - 4.0 * a * c + 0.0j)
    roots = sorted([(-b - disc) / (2.0 * a), (-b + disc) / (2.0 * a)],
                   key=lambda z: z.real)

    vecs = []
    for om in roots:
        _, _, vh = np.linalg.svd(M(om))
        vecs.append(vh[-1].conj())
    return roots, vecs


def scale_mode(vec, target_Al):
    """Scale a dispersion eigenvector so its A_l component is the real target."""
    return vec * (target_Al / vec[0])

import numpy as np
import pytest

from twofluid import geometry
from twofluid.geometry import PipeGeometry


GEOM = PipeGeometry(R=0.05, L=1.0)


def test_pipe_geometry_derived_quantities():
    assert GEOM.D == 0.1
    assert GEOM.A == pytest.approx(np.pi * 0.05**2, rel=1e-15)


def test_pipe_geometry_validation():
    with pytest.raises(ValueError):
        PipeGeometry(R=-1.0, L=1.0)
    with pytest.raises(ValueError):
        PipeGeometry(R=1.0, L=0.0)
    with pytest.raises(ValueError):
        PipeGeometry(R=1.0, L=1.0, eps_wall=-1e-9)


def test_alpha_from_angle_exact_points():
    assert geometry.alpha_from_angle(0.0) == 0.0
    assert geometry.alpha_from_angle(np.pi / 2) == pytest.approx(0.5, abs=1e-15)
    assert geometry.alpha_from_angle(np.pi) == pytest.approx(1.0, abs=1e-15)


def test_wetted_angle_roundtrip(rng):
    alpha = rng.uniform(0.0, 1.0, 2000)
    gamma = geometry.wetted_angle(alpha)
    # closed-form inverse is accurate to a few mrad over the whole range
    assert np.max(np.abs(geometry.alpha_from_angle(gamma) - alpha)) < 3e-3


def test_wetted_angle_exact_oracle(rng):
    alpha = rng.uniform(1e-4, 1.0 - 1e-4, 200)
    gamma = geometry.wetted_angle_exact(alpha)
    assert np.max(np.abs(geometry.alpha_from_angle(gamma) - alpha)) < 1e-12
    # approximation tracks the bisection oracle
    approx = geometry.wetted_angle(alpha)
    assert np.max(np.abs(approx - gamma)) < 5e-3


def test_wetted_angle_bounds():
    with pytest.raises(ValueError):
        geometry.wetted_angle(-0.01)
    with pytest.raises(ValueError):
        geometry.wetted_angle(1.01)
    # within tolerance: clipped, no error
    geometry.wetted_angle(1.0 + 1e-13)


def test_cross_section_consistency(rng):
    alpha = rng.uniform(1e-3, 1.0 - 1e-3, 1000)
    sec = geometry.cross_section(alpha, GEOM)
    assert np.allclose(sec.A_l + sec.A_g, GEOM.A, rtol=1e-14)
    assert np.allclose(sec.P_l + sec.P_g, np.pi * GEOM.D, rtol=1e-14)
    assert np.all(sec.P_gl > 0)
    assert np.allclose(sec.dh_dAl, 1.0 / sec.P_gl, rtol=1e-14)
    assert np.all((sec.h > 0) & (sec.h < GEOM.D))
    assert not np.any(sec.degenerate)


def test_cross_section_height_monotone():
    alpha = np.linspace(1e-3, 1.0 - 1e-3, 500)
    sec = geometry.cross_section(alpha, GEOM)
    assert np.all(np.diff(sec.h) > 0)


def test_cross_section_clamps_degenerate():
    sec = geometry.cross_section(np.array([0.0, 1e-9, 0.5, 1.0]), GEOM)
    assert list(sec.degenerate) == [True, True, False, True]
    assert sec.alpha_l[0] == geometry.ALPHA_MIN
    assert sec.alpha_l[-1] == 1.0 - geometry.ALPHA_MIN
    assert np.all(np.isfinite(sec.dh_dAl))


def test_level_potential_mixture_identity(rng):
    """K_g / rho_g + K_l / rho_l = g_n (R - h) A: the cubic terms cancel."""
    from twofluid.closures import FluidProps
    fluids = FluidProps(rho_g=1.2, rho_l=998.0, mu_g=1.8e-5, mu_l=1e-3)
    alpha = rng.uniform(1e-3, 1.0 - 1e-3, 1000)
    sec = geometry.cross_section(alpha, GEOM)
    g_n = 9.8
    K_g, K_l = geometry.level_potential(sec, GEOM, fluids, g_n)
    lhs = K_g / fluids.rho_g + K_l / fluids.rho_l
    rhs = g_n * (GEOM.R - sec.h) * GEOM.A
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-14)


def test_level_potential_gradient_is_level_term(rng):
    """dK_beta/dA_l -> the hydrostatic level-gradient coefficient.

    For smooth fields the difference quotient of K_beta between two nearby
    hold-ups equals rho_beta g_n A_beta dh/dA_l at the midpoint, which is
    the continuous level-gradient term of the momentum equations.
    """
    from twofluid.closures import FluidProps
    fluids = FluidProps(rho_g=1.2, rho_l=998.0, mu_g=1.8e-5, mu_l=1e-3)
    g_n = 9.8
    alpha = rng.uniform(0.1, 0.9, 200)
    d_alpha = 1e-5
    sec_m = geometry.cross_section(alpha - d_alpha, GEOM)
    sec_p = geometry.cross_section(alpha + d_alpha, GEOM)
    sec_0 = geometry.cross_section(alpha, GEOM)
    dA_l = 2.0 * d_alpha * GEOM.A
    for rho, pick in ((fluids.rho_g, 0), (fluids.rho_l, 1)):
        K_m = geometry.level_potential(sec_m, GEOM, fluids, g_n)[pick]
        K_p = geometry.level_potential(sec_p, GEOM, fluids, g_n)[pick]
        A_beta = sec_0.A_g if pick == 0 else sec_0.A_l
        got = (K_p - K_m) / dA_l
        # dK_beta/dA_l = -rho_beta g_n A_beta dh/dA_l for both phases
        expect = -rho * g_n * A_beta * sec_0.dh_dAl
        assert np.allclose(got, expect, rtol=5e-3, atol=1e-8)

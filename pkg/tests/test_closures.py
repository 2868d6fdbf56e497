import numpy as np
import pytest

from twofluid import closures, geometry
from twofluid.closures import FluidProps

from conftest import TEST_FLUIDS, TEST_GEOM


def test_fluid_props_validation():
    with pytest.raises(ValueError):
        FluidProps(rho_g=0.0, rho_l=1000.0, mu_g=1e-5, mu_l=1e-3)
    with pytest.raises(ValueError):
        FluidProps(rho_g=1000.0, rho_l=1.2, mu_g=1e-5, mu_l=1e-3)


def test_hydraulic_diameter_limits():
    # near-full liquid: D_hl tends to the pipe diameter
    sec = geometry.cross_section(np.array([1.0 - 1e-9]), TEST_GEOM)
    D_hg, D_hl = closures.hydraulic_diameter(sec)
    assert D_hl[0] == pytest.approx(TEST_GEOM.D, rel=1e-2)
    sec = geometry.cross_section(np.array([0.5]), TEST_GEOM)
    D_hg, D_hl = closures.hydraulic_diameter(sec)
    # half-full: liquid channel D_h = 4 (A/2) / (pi D / 2) = D
    assert D_hl[0] == pytest.approx(TEST_GEOM.D, rel=1e-12)
    assert D_hg[0] < D_hl[0]   # gas perimeter includes the interface


def test_churchill_laminar_limit(rng):
    Re = rng.uniform(1.0, 100.0, 1500)
    f = closures.churchill_friction(Re)
    assert np.allclose(f, 16.0 / Re, rtol=2e-3)
    assert np.allclose(closures.laminar_friction(Re), 16.0 / Re, rtol=1e-15)


def test_churchill_turbulent_magnitude():
    # smooth pipe, Re = 1e5: Fanning factor close to Blasius 0.079 Re^-0.25
    f = closures.churchill_friction(1e5)
    assert f == pytest.approx(0.079 * 1e5 ** -0.25, rel=0.1)
    # roughness increases friction
    assert closures.churchill_friction(1e5, 1e-3) > f


def test_churchill_monotone_outside_transition():
    # strictly decreasing in the laminar and turbulent ranges; the
    # composite curve is allowed a bump across the transition
    for Re in (np.logspace(0, np.log10(2000.0), 150),
               np.logspace(np.log10(4000.0), 7, 150)):
        f = closures.churchill_friction(Re)
        assert np.all(np.diff(f) < 0.0)
        assert np.all(np.isfinite(f) & (f > 0.0))


def test_friction_positive_re_required():
    with pytest.raises(ValueError):
        closures.churchill_friction(0.0)
    with pytest.raises(ValueError):
        closures.laminar_friction(-1.0)


def test_interfacial_floor(rng):
    f_g = rng.uniform(0.0, 0.05, 1000)
    f_gl = closures.interfacial_friction(f_g)
    assert np.all(f_gl >= closures.F_GL_MIN)
    big = f_g > closures.F_GL_MIN
    assert np.allclose(f_gl[big], f_g[big])


def test_shear_stress_signs(rng):
    sec = geometry.cross_section(rng.uniform(0.2, 0.8, 500), TEST_GEOM)
    u_g = rng.uniform(-3.0, 3.0, 500)
    u_l = rng.uniform(-3.0, 3.0, 500)
    tau_g, tau_l, tau_gl = closures.shear_stresses(u_g, u_l, sec,
                                                   TEST_FLUIDS, TEST_GEOM)
    assert np.all(np.sign(tau_g) == np.sign(u_g))
    assert np.all(np.sign(tau_l) == np.sign(u_l))
    assert np.all(np.sign(tau_gl) == np.sign(u_g - u_l))


def test_shear_stress_zero_velocity():
    sec = geometry.cross_section(np.array([0.5]), TEST_GEOM)
    tau_g, tau_l, tau_gl = closures.shear_stresses(0.0, 0.0, sec,
                                                   TEST_FLUIDS, TEST_GEOM)
    assert tau_g == 0.0 and tau_l == 0.0 and tau_gl == 0.0


def test_constant_interfacial_model():
    sec = geometry.cross_section(np.array([0.5]), TEST_GEOM)
    _, _, tau_gl = closures.shear_stresses(2.0, 0.5, sec, TEST_FLUIDS,
                                           TEST_GEOM, interfacial="constant")
    du = 1.5
    expect = 0.5 * closures.F_GL_MIN * TEST_FLUIDS.rho_g * du * abs(du)
    assert tau_gl == pytest.approx(expect, rel=1e-14)
    with pytest.raises(ValueError):
        closures.shear_stresses(1.0, 0.0, sec, TEST_FLUIDS, TEST_GEOM,
                                interfacial="bogus")


def test_source_terms_interfacial_antisymmetry(rng):
    """The interfacial contribution cancels from S_g + S_l."""
    sec = geometry.cross_section(rng.uniform(0.2, 0.8, 1000), TEST_GEOM)
    u_g = rng.uniform(-3.0, 3.0, 1000)
    u_l = rng.uniform(-3.0, 3.0, 1000)
    g_s = 0.3
    F = 11.0
    S_g, S_l = closures.source_terms(u_g, u_l, sec, TEST_FLUIDS, TEST_GEOM,
                                     g_s, F)
    tau_g, tau_l, tau_gl = closures.shear_stresses(u_g, u_l, sec,
                                                   TEST_FLUIDS, TEST_GEOM)
    total = (-tau_g * sec.P_g - tau_l * sec.P_l
             - (TEST_FLUIDS.rho_g * sec.A_g + TEST_FLUIDS.rho_l * sec.A_l)
             * g_s + F * TEST_GEOM.A)
    assert np.allclose(S_g + S_l, total, rtol=1e-12, atol=1e-12)


def test_source_terms_quiescent_horizontal():
    sec = geometry.cross_section(np.array([0.4]), TEST_GEOM)
    S_g, S_l = closures.source_terms(0.0, 0.0, sec, TEST_FLUIDS, TEST_GEOM,
                                     g_s=0.0)
    assert S_g == 0.0 and S_l == 0.0

import numpy as np
import pytest

from twofluid.boundary import BoundarySpec, EndCondition, Signal
from twofluid.closures import FluidProps
from twofluid.geometry import PipeGeometry
from twofluid.model import Grid, State, TwoFluidModel


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


TEST_FLUIDS = FluidProps(rho_g=1.26, rho_l=1003.0, mu_g=1.8e-5, mu_l=1.5e-3)
TEST_GEOM = PipeGeometry(R=0.08, L=4.0, phi=0.0, eps_wall=1e-8)


def make_model(topology, N=8, geom=TEST_GEOM, fluids=TEST_FLUIDS, g=9.8):
    """Small model for property sweeps; topology in {periodic, walls, flow}."""
    if topology == "periodic":
        grid = Grid(N=N, L=geom.L, periodic=True)
        bc = BoundarySpec.make_periodic()
    elif topology == "walls":
        grid = Grid(N=N, L=geom.L, periodic=False)
        bc = BoundarySpec.bounded(EndCondition.wall(), EndCondition.wall())
    elif topology == "flow":
        grid = Grid(N=N, L=geom.L, periodic=False)
        bc = BoundarySpec.bounded(
            EndCondition.inflow(Signal.constant(0.03), Signal.constant(1.0),
                                strong=True),
            EndCondition.outflow(1.0e5))
    else:
        raise ValueError(topology)
    return TwoFluidModel(grid, geom, fluids, bc, g=g)


def random_masses(model, rng, lo=0.2, hi=0.8):
    """Cell and boundary-face masses with hold-up uniform in [lo, hi]."""
    N = model.grid.N
    A = model.geom.A
    rho_g, rho_l = model.fluids.rho_g, model.fluids.rho_l
    alpha = rng.uniform(lo, hi, N)
    m_g = rho_g * (1.0 - alpha) * A
    m_l = rho_l * alpha * A
    if model.grid.periodic:
        return m_g, m_l, None, None
    alpha_b = rng.uniform(lo, hi, 2)
    return (m_g, m_l,
            rho_g * (1.0 - alpha_b) * A, rho_l * alpha_b * A)


def random_state(model, rng, u_scale=0.3):
    """Constraint-inconsistent random state (project with consistent_init)."""
    m_g, m_l, mb_g, mb_l = random_masses(model, rng)
    nf = model.grid.n_faces
    fm_g, fm_l = model.face_masses(m_g, m_l, mb_g, mb_l)
    I_g = fm_g * rng.uniform(-u_scale, u_scale, nf)
    I_l = fm_l * rng.uniform(-u_scale, u_scale, nf)
    return State(t=0.0, m_g=m_g, m_l=m_l, I_g=I_g, I_l=I_l,
                 p=np.zeros(model.grid.N), mb_g=mb_g, mb_l=mb_l)

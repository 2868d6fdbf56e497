"""One-dimensional incompressible gas-liquid two-fluid pipeline simulator.

Staggered finite-volume spatial discretization with constraint-consistent
half-explicit Runge-Kutta time integration: explicit stages for mass and
momentum, an implicit pressure determined by per-stage Poisson solves, and
characteristic boundary conditions for the hold-up fraction.
"""

from .geometry import PipeGeometry, CrossSection, wetted_angle, cross_section, level_potential
from .closures import FluidProps, churchill_friction, laminar_friction, interfacial_friction
from .model import Grid, State, TwoFluidModel
from .boundary import BoundarySpec, EndCondition, Signal
from .tableaus import ButcherTableau, get_tableau, TABLEAUS, verify_tableau
from .timeint import step, consistent_init, pressure_postprocess, cfl_timestep
from .linsolve import CGConfig

__all__ = [
    "PipeGeometry", "CrossSection", "wetted_angle", "cross_section", "level_potential",
    "FluidProps", "churchill_friction", "laminar_friction", "interfacial_friction",
    "Grid", "State", "TwoFluidModel",
    "BoundarySpec", "EndCondition", "Signal",
    "ButcherTableau", "get_tableau", "TABLEAUS", "verify_tableau",
    "step", "consistent_init", "pressure_postprocess", "cfl_timestep",
    "CGConfig",
]

__version__ = "0.1.0"

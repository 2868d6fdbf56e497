"""Boundary condition specification: signals and end conditions.

A bounded pipe carries one EndCondition per end:

  wall            zero momentum, zero mass flux
  inflow_strong   prescribed phase momenta I_beta(t), imposed exactly
  inflow_weak     same signals, but imposed through their time derivative
                  (the boundary momentum is integrated alongside the
                  interior unknowns)
  outflow         prescribed pressure p_out(t) just outside the last face

The hold-up at inflow/wall/outflow faces is not prescribed; it evolves by
the outgoing-characteristic equation (see TwoFluidModel.holdup_rate_end).
"""

from dataclasses import dataclass
from typing import Callable, Optional

DEFAULT_DERIV_STEP = 1e-6


class Signal:
    """Scalar function of time with an (optionally analytic) derivative."""

    def __init__(self, value: Callable[[float], float],
                 derivative: Optional[Callable[[float], float]] = None):
        self._value = value
        self._derivative = derivative

    @classmethod
    def constant(cls, v):
        return cls(lambda t: v, lambda t: 0.0)

    def value(self, t):
        return self._value(t)

    def derivative(self, t, h=None):
        if self._derivative is not None:
            return self._derivative(t)
        if h is None:
            h = DEFAULT_DERIV_STEP
        return (self._value(t + h) - self._value(t - h)) / (2.0 * h)


@dataclass(frozen=True)
class EndCondition:
    kind: str                      # wall | inflow_strong | inflow_weak | outflow
    I_g: Optional[Signal] = None   # inflow momentum signals [kg/(m s)]
    I_l: Optional[Signal] = None
    p_out: Optional[Signal] = None  # outflow pressure signal [Pa]

    @classmethod
    def wall(cls):
        return cls(kind="wall")

    @classmethod
    def inflow(cls, I_g, I_l, strong=True):
        if not isinstance(I_g, Signal):
            I_g = Signal.constant(I_g)
        if not isinstance(I_l, Signal):
            I_l = Signal.constant(I_l)
        kind = "inflow_strong" if strong else "inflow_weak"
        return cls(kind=kind, I_g=I_g, I_l=I_l)

    @classmethod
    def outflow(cls, p_out):
        if not isinstance(p_out, Signal):
            p_out = Signal.constant(p_out)
        return cls(kind="outflow", p_out=p_out)


_VALID_LEFT = {"wall", "inflow_strong", "inflow_weak"}
_VALID_RIGHT = {"wall", "outflow"}


@dataclass(frozen=True)
class BoundarySpec:
    """Either periodic topology or a (left, right) pair of end conditions.

    Supported combinations: walls at both ends, or an inflow (strong or
    weak) on the left with an outflow on the right.
    """

    periodic: bool
    left: Optional[EndCondition] = None
    right: Optional[EndCondition] = None

    @classmethod
    def make_periodic(cls):
        return cls(periodic=True)

    @classmethod
    def bounded(cls, left, right):
        if left.kind not in _VALID_LEFT:
            raise ValueError(f"unsupported left-end condition {left.kind!r}")
        if right.kind not in _VALID_RIGHT:
            raise ValueError(f"unsupported right-end condition {right.kind!r}")
        if (left.kind != "wall") != (right.kind == "outflow"):
            raise ValueError("supported combinations: wall/wall or inflow/outflow")
        return cls(periodic=False, left=left, right=right)

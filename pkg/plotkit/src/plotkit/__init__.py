"""Offline figure generation from the twofluid CLI's CSV outputs."""

from .figures import (SchemaError, plot_convergence, plot_monitor,
                      plot_spacetime)

__all__ = ["SchemaError", "plot_convergence", "plot_monitor",
           "plot_spacetime"]

"""
QHJ module for loggas.

Quantum Hamilton-Jacobi machinery:

- :class:`MomentumFunction` and :func:`riccati_residual` -- the pole form of
  ``p`` and the Riccati equation ``p**2 - i p' = E - V``.
- :func:`polynomial_spectrum` -- bound states from polynomial solutions of
  the QHJ ODE, returned as :class:`BoundState`.
- :func:`quantization_integral` (alias :func:`berry_phase`) -- the exact
  quantization contour integral.
- :func:`burgers_residual` -- Burgers-Hopf check on pole trajectories.
"""

from loggas.QHJ.base import (
    BoundState,
    MomentumFunction,
    polynomial_spectrum,
    riccati_residual,
    schrodinger_residual,
    solve_polynomial_ode,
    state_riccati_residual,
    wavefunction,
)
from loggas.QHJ.contour import (
    Rectangle,
    berry_phase,
    burgers_residual,
    contour_integral,
    quantization_integral,
)

__all__ = [
    "BoundState",
    "MomentumFunction",
    "riccati_residual",
    "state_riccati_residual",
    "polynomial_spectrum",
    "solve_polynomial_ode",
    "wavefunction",
    "schrodinger_residual",
    "Rectangle",
    "contour_integral",
    "quantization_integral",
    "berry_phase",
    "burgers_residual",
]

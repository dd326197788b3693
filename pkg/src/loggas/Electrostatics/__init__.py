"""
Electrostatics module for loggas.

The Stieltjes log-gas of unit charges:

- :class:`ChargeConfiguration` -- ordered positions in a potential.
- :func:`energy` and :func:`gradient` -- log-gas energy and its gradient.
- :func:`equilibrium` / :class:`EquilibriumSolver` -- damped Newton minimization.
- :func:`stieltjes_identity_check` -- the ``f''/(2f')`` pair-sum identity.
"""

from loggas.Electrostatics.base import (
    ChargeConfiguration,
    EquilibriumSolver,
    classical_roots,
    energy,
    equilibrium,
    gradient,
    log_gas_energy,
    log_gas_gradient,
    log_gas_hessian,
    seed_positions,
    stieltjes_identity_check,
)

__all__ = [
    "ChargeConfiguration",
    "EquilibriumSolver",
    "energy",
    "gradient",
    "equilibrium",
    "classical_roots",
    "seed_positions",
    "stieltjes_identity_check",
    "log_gas_energy",
    "log_gas_gradient",
    "log_gas_hessian",
]

"""
Dyson module for loggas.

Dynamics whose fixed points and stationary laws are log-gas objects:

- :func:`drift`, :func:`step` and :func:`evolve` -- Euler-Maruyama Dyson
  gas on :class:`GasTrajectoryState`, batched into :class:`GasTrajectory`.
- :func:`stationarity_test` -- KS distance to direct ensemble samples.
- :func:`pole_dynamics` -- RK4 flow of complex moving poles.
"""

from loggas.Dyson.base import (
    GasTrajectory,
    GasTrajectoryState,
    burnin_steps,
    default_burnin,
    drift,
    evolve,
    gas_drift,
    stationarity_test,
    step,
)
from loggas.Dyson.poles import (
    PoleTrajectoryState,
    pole_dynamics,
    pole_velocity,
    two_body_solution,
)

__all__ = [
    "GasTrajectoryState",
    "GasTrajectory",
    "drift",
    "gas_drift",
    "step",
    "evolve",
    "burnin_steps",
    "default_burnin",
    "stationarity_test",
    "PoleTrajectoryState",
    "pole_dynamics",
    "pole_velocity",
    "two_body_solution",
]

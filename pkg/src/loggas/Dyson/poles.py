"""
Complex pole dynamics of the time-dependent momentum function.

The moving poles of ``p(x, t) = sum -i/(x - x_k(t)) + i W(x)`` evolve as

    dx_k/dt = i * (sum_{j != k} 1/(x_k - x_j) - W(x_k))

so that real equilibria of the log-gas (where the bracket vanishes) are
fixed points. With ``W = 0`` two poles at ``±x0`` follow
``x(t) = sqrt(x0**2 + i t)``. The sum over poles is conserved when
``W = 0`` because the pair terms cancel.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from loggas.exceptions import ParameterDomainError, PoleCollisionError
from loggas.Potentials.base import Superpotential
from loggas.utils import inverse_pair_sums, min_pair_distance

COLLISION_DISTANCE = 1e-8


@dataclass(frozen=True)
class PoleTrajectoryState:
    """Poles at one instant.

    Attributes:
        time: Integration time.
        poles: Distinct complex poles.
        superpotential: ``W``; ``None`` for the free case ``Q = 0``.
    """

    time: float
    poles: np.ndarray
    superpotential: Optional[Superpotential] = field(default=None, repr=False, compare=False)


def pole_velocity(poles: np.ndarray, superpotential: Optional[Superpotential] = None) -> np.ndarray:
    """Right-hand side ``i (sum 1/(x_k - x_j) - W(x_k))``."""
    poles = np.asarray(poles, dtype=complex)
    bracket = inverse_pair_sums(poles)
    if superpotential is not None:
        bracket = bracket - superpotential.W(poles)
    return 1j * bracket


def _rk4(x: np.ndarray, dt: float, sp: Optional[Superpotential]) -> np.ndarray:
    k1 = pole_velocity(x, sp)
    k2 = pole_velocity(x + 0.5 * dt * k1, sp)
    k3 = pole_velocity(x + 0.5 * dt * k2, sp)
    k4 = pole_velocity(x + dt * k3, sp)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def pole_dynamics(
    initial: Sequence[complex],
    superpotential: Optional[Superpotential] = None,
    dt: float = 1e-3,
    steps: int = 1000,
    record_every: int = 1,
) -> List[PoleTrajectoryState]:
    """
    Integrate the pole system with fixed-step fourth-order Runge-Kutta.

    Args:
        initial: Distinct starting poles.
        superpotential: ``W`` of the fixed part; ``None`` means ``Q = 0``.
        dt: Step size.
        steps: Number of steps.
        record_every: Keep every *record_every*-th state.

    Returns:
        States from ``t = 0`` to ``t = steps * dt``, initial state included.

    Raises:
        PoleCollisionError: When two poles come within ``1e-8``; carries
            the time of detection.

    Example::

        traj = pole_dynamics([-1.0, 1.0], dt=1e-3, steps=1000)
        traj[-1].poles[1]      # ≈ sqrt(1 + 1j)
    """
    if dt <= 0 or steps < 0 or record_every < 1:
        raise ParameterDomainError("need dt > 0, steps >= 0 and record_every >= 1")
    x = np.asarray(initial, dtype=complex).ravel()
    if min_pair_distance(x) < COLLISION_DISTANCE:
        raise PoleCollisionError("initial poles are not distinct", time=0.0)
    states = [PoleTrajectoryState(0.0, x.copy(), superpotential)]
    for k in range(1, steps + 1):
        x = _rk4(x, dt, superpotential)
        t = k * dt
        if not np.all(np.isfinite(x)) or min_pair_distance(x) < COLLISION_DISTANCE:
            raise PoleCollisionError(f"poles collided near t={t:g}", time=t)
        if k % record_every == 0:
            states.append(PoleTrajectoryState(t, x.copy(), superpotential))
    return states


def two_body_solution(x0: complex, t):
    """Free two-pole solution ``sqrt(x0**2 + i t)`` for poles at ``±x0``."""
    return np.sqrt(complex(x0) ** 2 + 1j * np.asarray(t, dtype=float))

"""
Stieltjes log-gas: energy, gradient and equilibrium of unit charges.

``n`` unit charges on the domain of a :class:`~loggas.Potentials.base.PotentialSpec`
repel logarithmically and feel the external field ``W``:

    E(x) = sum_k ∫W(x_k) - sum_{i<j} ln|x_i - x_j|

    dE/dx_k = W(x_k) - sum_{j != k} 1 / (x_k - x_j)

The stationarity condition is the pole condition of the momentum
function, so for the harmonic oscillator the equilibrium sits at the
Hermite zeros and for Coulomb at the zeros of ``L_n^(2l+1)(2 kappa r)``.
The Dyson index does not enter; it only scales the Boltzmann weight.

Example::

    from loggas.Electrostatics.base import equilibrium
    from loggas.Potentials.base import make_potential

    cfg = equilibrium(2, make_potential("harmonic"))
    cfg.positions            # [-0.7071..., 0.7071...]
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from loggas.exceptions import (
    ConvergenceError,
    ParameterDomainError,
    SingularConfigurationError,
)
from loggas.OrthoPoly.base import PolynomialFamily, roots
from loggas.Potentials.base import PotentialName, PotentialSpec
from loggas.utils import inverse_pair_sums, min_pair_distance, pair_differences

SEED_LAYOUTS = ("chebyshev", "uniform")
DYSON_INDICES = (1, 2, 4)
ENERGY_ROUNDOFF_RTOL = 1e-14


@dataclass(frozen=True)
class ChargeConfiguration:
    """Ordered positions of unit charges in a potential.

    Positions are sorted on construction.

    Attributes:
        positions: Strictly increasing positions.
        potential: The confining :class:`PotentialSpec`.
        beta: Dyson index, one of ``1, 2, 4``.
        metadata: Solver information (iterations, gradient norm, energy history).

    Raises:
        SingularConfigurationError: On coincident positions.
        ParameterDomainError: On positions outside the domain or a bad ``beta``.
    """

    positions: np.ndarray
    potential: PotentialSpec
    beta: int = 2
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        x = np.sort(np.asarray(self.positions, dtype=float).ravel())
        if x.size == 0:
            raise ParameterDomainError("a configuration needs at least one charge")
        if self.beta not in DYSON_INDICES:
            raise ParameterDomainError(f"beta must be one of {DYSON_INDICES}, got {self.beta}")
        if not np.all(np.isfinite(x)):
            raise ParameterDomainError("positions must be finite")
        if x.size > 1 and np.min(np.diff(x)) == 0:
            raise SingularConfigurationError("coincident charges: the log interaction diverges")
        if not np.all(self.potential.contains(x)):
            raise ParameterDomainError(
                f"positions leave the domain {self.potential.domain} of {self.potential.name.value}"
            )
        x.setflags(write=False)
        object.__setattr__(self, "positions", x)

    @property
    def n(self) -> int:
        return int(self.positions.size)


def _check_distinct(x: np.ndarray) -> None:
    if x.shape[-1] > 1 and min_pair_distance(x) == 0:
        raise SingularConfigurationError("coincident charges: the log interaction diverges")


def log_gas_energy(x: np.ndarray, potential: PotentialSpec) -> np.ndarray:
    """Energy of a configuration (or a batch along leading axes), unvalidated."""
    x = np.asarray(x, dtype=float)
    d = np.abs(pair_differences(x))
    iu = np.triu_indices(x.shape[-1], k=1)
    return np.sum(potential.confinement(x), axis=-1) - np.sum(np.log(d[..., iu[0], iu[1]]), axis=-1)


def log_gas_gradient(x: np.ndarray, potential: PotentialSpec) -> np.ndarray:
    """Gradient ``W(x_k) - sum_{j!=k} 1/(x_k - x_j)``, batched and unvalidated."""
    x = np.asarray(x, dtype=float)
    return potential.W(x) - inverse_pair_sums(x)


def log_gas_hessian(x: np.ndarray, potential: PotentialSpec) -> np.ndarray:
    """Analytic Hessian: diagonal ``W'(x_k) + sum 1/d**2``, off-diagonal ``-1/d**2``."""
    x = np.asarray(x, dtype=float)
    inv2 = 1.0 / pair_differences(x) ** 2
    idx = np.arange(x.size)
    inv2[idx, idx] = 0.0
    hess = -inv2
    hess[idx, idx] = potential.dW(x) + inv2.sum(axis=1)
    return hess


def energy(cfg: ChargeConfiguration) -> float:
    """
    Log-gas energy ``sum ∫W(x_k) - sum_{i<j} ln|x_i - x_j|``.

    Raises:
        SingularConfigurationError: On coincident positions.
    """
    _check_distinct(cfg.positions)
    return float(log_gas_energy(cfg.positions, cfg.potential))


def gradient(cfg: ChargeConfiguration) -> np.ndarray:
    """
    Gradient of :func:`energy`; zero exactly at equilibrium.

    Raises:
        SingularConfigurationError: On coincident positions.
    """
    _check_distinct(cfg.positions)
    return log_gas_gradient(cfg.positions, cfg.potential)


def support_estimate(potential: PotentialSpec, n: int) -> Tuple[float, float]:
    """Interval expected to hold the equilibrium of *n* charges."""
    p = potential.params
    name = potential.name
    if name is PotentialName.HARMONIC:
        s = np.sqrt(2.0 * n)
        lo, hi = -s, s
    elif name is PotentialName.COULOMB:
        kappa = p["Z"] / (2.0 * (p["l"] + 1.0))
        lo, hi = 0.0, (4.0 * n + 4.0 * p["l"] + 6.0) / (2.0 * kappa)
    elif name is PotentialName.OSCILLATOR_3D:
        lo, hi = 0.0, 2.0 * np.sqrt(2.0 * n + p["l"] + 2.0)
    elif name is PotentialName.DEFORMED:
        lo, hi = 0.0, 2.0 * np.sqrt(n + p["g"] + 2.0)
    elif name is PotentialName.MORSE:
        center = 0.5 * (potential.probe_window[0] + potential.probe_window[1])
        A, alpha = p["A"], p["alpha"]
        lo = center - 2.0 / alpha
        hi = center + 2.0 * n / max(A, 1e-3) + 4.0 / alpha
    else:
        lo, hi = potential.domain
    dlo, dhi = potential.domain
    lo, hi = max(lo, dlo), min(hi, dhi)
    if not (np.isfinite(lo) and np.isfinite(hi)):
        lo, hi = potential.probe_window
    return float(lo), float(hi)


def seed_positions(n: int, potential: PotentialSpec, layout: str = "chebyshev") -> np.ndarray:
    """Initial layout strictly inside :func:`support_estimate`.

    Raises:
        ParameterDomainError: On an unknown layout.
    """
    lo, hi = support_estimate(potential, n)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    if layout == "chebyshev":
        i = np.arange(n)
        return np.sort(mid + half * np.cos(np.pi * (2 * i + 1) / (2 * n)))
    if layout == "uniform":
        return lo + (hi - lo) * np.arange(1, n + 1) / (n + 1)
    raise ParameterDomainError(f"unknown seed layout '{layout}'; expected one of {SEED_LAYOUTS}")


class EquilibriumSolver:
    """Damped Newton solver for the log-gas equilibrium.

    Each iteration solves with the analytic Hessian (falling back to the
    gradient direction when the Newton step is not a descent direction)
    and halves the step until ordering and domain are kept and the energy
    decreases. Near the minimum, where the energy is flat to round-off, a
    step is also accepted if it does not raise the energy beyond
    ``ENERGY_ROUNDOFF_RTOL * max(1, |E|)`` and strictly reduces the gradient
    max-norm; such flat steps are counted in ``metadata["flat_steps"]``.

    Args:
        tol: Gradient max-norm at which to stop.
        max_iter: Newton iterations before giving up.
        polish: Extra Newton steps taken after ``tol`` is met while the
            gradient keeps shrinking.
        verbose: Print one line per iteration.
    """

    def __init__(
        self,
        tol: float = 1e-10,
        max_iter: int = 200,
        polish: int = 3,
        verbose: bool = False,
    ):
        if tol <= 0:
            raise ParameterDomainError(f"tol must be positive, got {tol}")
        self.tol = tol
        self.max_iter = max_iter
        self.polish = polish
        self.verbose = verbose

    def _admissible(self, x: np.ndarray, potential: PotentialSpec) -> bool:
        return bool(np.all(np.diff(x) > 0) and np.all(potential.contains(x)))

    def _step(self, x, g, e, potential) -> Tuple[np.ndarray, np.ndarray, float, float, bool]:
        try:
            direction = -np.linalg.solve(log_gas_hessian(x, potential), g)
        except np.linalg.LinAlgError:
            direction = -g
        if not np.dot(direction, g) < 0:
            direction = -g
        gnorm = np.max(np.abs(g))
        t = 1.0
        while t > 1e-16:
            trial = x + t * direction
            if self._admissible(trial, potential):
                e_new = float(log_gas_energy(trial, potential))
                g_new = log_gas_gradient(trial, potential)
                if e_new < e:
                    return trial, g_new, e_new, t, False
                if (
                    e_new <= e + ENERGY_ROUNDOFF_RTOL * max(1.0, abs(e))
                    and np.max(np.abs(g_new)) < gnorm
                ):
                    return trial, g_new, e_new, t, True
            t *= 0.5
        raise ConvergenceError(
            "step halving underflowed without an admissible descent step",
            iterate=x,
            gradient_norm=float(gnorm),
        )

    def solve(
        self,
        potential: PotentialSpec,
        initial: Sequence[float],
        beta: int = 2,
    ) -> ChargeConfiguration:
        """Minimize the energy from *initial* (sorted before use).

        Raises:
            ConvergenceError: After ``max_iter`` iterations, or if no
                admissible step exists; carries the last iterate.
        """
        x = np.sort(np.asarray(initial, dtype=float))
        if not self._admissible(x, potential):
            raise ParameterDomainError("initial layout must be distinct and inside the domain")
        e = float(log_gas_energy(x, potential))
        g = log_gas_gradient(x, potential)
        history: List[float] = [e]
        iterations = flat_steps = 0
        while np.max(np.abs(g)) >= self.tol:
            if iterations >= self.max_iter:
                if self.verbose:
                    print(f"⚠️  Max iterations ({self.max_iter}) reached\n")
                raise ConvergenceError(
                    f"equilibrium did not converge in {self.max_iter} iterations",
                    iterate=x,
                    gradient_norm=float(np.max(np.abs(g))),
                )
            x, g, e, t, flat = self._step(x, g, e, potential)
            flat_steps += flat
            iterations += 1
            history.append(e)
            if self.verbose:
                print(
                    f"🔧 iter {iterations}: energy={e:.15g} |grad|={np.max(np.abs(g)):.3e} step={t:g}"
                )
        for _ in range(self.polish):
            gnorm = np.max(np.abs(g))
            if gnorm == 0:
                break
            try:
                x_new, g_new, e_new, _, flat = self._step(x, g, e, potential)
            except ConvergenceError:
                break
            if np.max(np.abs(g_new)) > 0.5 * gnorm:
                break
            x, g, e = x_new, g_new, e_new
            flat_steps += flat
            history.append(e)
        if self.verbose:
            print(f"✅ Converged: n={x.size} |grad|={np.max(np.abs(g)):.3e} after {iterations} iterations\n")
        return ChargeConfiguration(
            positions=x,
            potential=potential,
            beta=beta,
            metadata={
                "iterations": iterations,
                "gradient_norm": float(np.max(np.abs(g))),
                "energy_history": history,
                "flat_steps": flat_steps,
            },
        )


def equilibrium(
    n: int,
    potential: PotentialSpec,
    seed_layout: str = "chebyshev",
    initial: Optional[Sequence[float]] = None,
    beta: int = 2,
    tol: float = 1e-10,
    max_iter: int = 200,
    verbose: bool = False,
) -> ChargeConfiguration:
    """
    Equilibrium of *n* unit charges in *potential*.

    Args:
        n: Number of charges, ``n >= 1``.
        potential: A confining catalog potential.
        seed_layout: ``"chebyshev"`` or ``"uniform"`` initial positions.
        initial: Explicit initial positions; overrides *seed_layout*.
        beta: Dyson index stored on the result.
        tol: Gradient max-norm tolerance.
        max_iter: Iteration cap.
        verbose: Print solver progress.

    Returns:
        A :class:`ChargeConfiguration` with ``metadata`` holding
        ``iterations``, ``gradient_norm``, ``energy_history`` and ``flat_steps``.
        The energy history strictly decreases except at the ``flat_steps``
        round-off steps described on :class:`EquilibriumSolver`.

    Raises:
        ParameterDomainError: On ``n < 1`` or an unknown layout.
        ConvergenceError: If Newton does not converge.

    Example::

        cfg = equilibrium(5, make_potential("coulomb", l=0))
        cfg.positions   # zeros of L_5^(1)
    """
    if int(n) != n or n < 1:
        raise ParameterDomainError(f"n must be a positive integer, got {n}")
    if initial is None:
        initial = seed_positions(int(n), potential, seed_layout)
    elif len(initial) != n:
        raise ParameterDomainError(f"initial layout has {len(initial)} entries, expected {n}")
    solver = EquilibriumSolver(tol=tol, max_iter=max_iter, verbose=verbose)
    return solver.solve(potential, initial, beta=beta)


def classical_roots(potential: PotentialSpec, n: int) -> Optional[np.ndarray]:
    """Orthogonal-polynomial zeros that the equilibrium must reproduce.

    Hermite zeros for the harmonic oscillator, ``L_n^(2l+1)`` zeros scaled
    by ``1 / (2 kappa)`` for Coulomb; ``None`` when no classical family applies.
    """
    if potential.name is PotentialName.HARMONIC:
        return roots(PolynomialFamily.hermite(n))
    if potential.name is PotentialName.COULOMB:
        l, Z = potential.params["l"], potential.params["Z"]
        kappa = Z / (2.0 * (l + 1.0))
        return roots(PolynomialFamily.laguerre(2.0 * l + 1.0, n)) / (2.0 * kappa)
    return None


def stieltjes_identity_check(f_roots: Sequence[float]) -> float:
    """
    Max over roots of ``|f''(x_j) / (2 f'(x_j)) - sum_{k != j} 1/(x_j - x_k)|``.

    ``f = prod (x - x_k)``. The derivatives at each root come from the
    Taylor expansion ``f(x_j + t) = t * prod_{k != j} (t + x_j - x_k)``,
    whose first two coefficients give ``f'(x_j)`` and ``f''(x_j) / 2``.

    Raises:
        SingularConfigurationError: On repeated roots.

    Example::

        stieltjes_identity_check([-1.0, 1.0])   # 0.0
    """
    x = np.asarray(f_roots, dtype=float).ravel()
    if x.size == 0:
        raise ParameterDomainError("need at least one root")
    _check_distinct(x)
    sums = inverse_pair_sums(x)
    residual = 0.0
    for j in range(x.size):
        shifted = np.delete(x[j] - x, j)
        c = P.polyfromroots(-shifted)
        ratio = c[1] / c[0] if c.size > 1 else 0.0
        residual = max(residual, abs(ratio - sums[j]))
    return float(residual)

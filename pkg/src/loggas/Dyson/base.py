"""
Dyson gas dynamics: the Langevin realization of the Fokker-Planck equation.

Positions follow the Euler-Maruyama discretization of

    dx_j = [sum_{k != j} 1/(x_j - x_k) - W(x_j)] dt + sqrt(2/β) dB_j

whose generator is ``(1/β) ∂² - ∂(U ·)`` with drift ``U = -∇E`` for the
log-gas energy ``E`` of :mod:`loggas.Electrostatics.base`. Its stationary
density is ``exp(-β E)``, the eigenvalue JPDF.

When a step breaks the ordering (or leaves the domain) the step size is
halved, down to ``dt_min``; below that the noise is redrawn. Both events
are counted and reported. Burn-in defaults to ``10 n**2`` time units.

Example::

    from loggas.Dyson.base import evolve
    from loggas.Potentials.base import make_potential

    traj = evolve(8, make_potential("harmonic"), beta=1, dt=5e-3,
                  steps=1000, thin=200, chains=250, seed=3)
    traj.pooled().size           # snapshots * chains * 8
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import ks_2samp

from loggas.Electrostatics.base import seed_positions
from loggas.exceptions import (
    InsufficientSamplesError,
    ParameterDomainError,
    SingularConfigurationError,
    StepUnderflowError,
)
from loggas.Potentials.base import PotentialSpec
from loggas.utils import generate_seed, inverse_pair_sums, min_pair_distance, stream_generator

MIN_POOLED_POINTS = 1000
MAX_RESAMPLES = 100
NOISE_BLOCK = 256
BURNIN_TIME_PER_CHARGE_SQUARED = 10.0


def gas_drift(x: np.ndarray, potential: PotentialSpec) -> np.ndarray:
    """``sum_{k != j} 1/(x_j - x_k) - W(x_j)`` along the last axis."""
    x = np.asarray(x, dtype=float)
    return inverse_pair_sums(x) - potential.W(x)


def _check_layout(x: np.ndarray, beta: float, potential: PotentialSpec) -> None:
    if not beta > 0:
        raise ParameterDomainError(f"beta must be positive, got {beta}")
    if x.size > 1 and not np.all(np.diff(x) > 0):
        if min_pair_distance(x) == 0:
            raise SingularConfigurationError("coincident positions")
        raise ParameterDomainError("positions must be strictly increasing")
    if not np.all(potential.contains(x)):
        raise ParameterDomainError(f"positions leave the domain {potential.domain}")


@dataclass(frozen=True)
class GasTrajectoryState:
    """One Dyson-gas configuration in time.

    Attributes:
        time: Elapsed time.
        positions: Strictly increasing positions.
        beta: Dyson index (any positive value is accepted for dynamics).
        potential: Confining potential.
        rng: Generator driving the noise; it advances as steps are taken.
        halvings: Cumulative step halvings.
        resamples: Cumulative noise redraws.
    """

    time: float
    positions: np.ndarray
    beta: float
    potential: PotentialSpec = field(repr=False)
    rng: np.random.Generator = field(repr=False, compare=False)
    halvings: int = 0
    resamples: int = 0

    def __post_init__(self):
        x = np.asarray(self.positions, dtype=float).ravel()
        _check_layout(x, self.beta, self.potential)
        object.__setattr__(self, "positions", x)

    @classmethod
    def start(
        cls,
        positions: Sequence[float],
        potential: PotentialSpec,
        beta: float = 1.0,
        seed: Optional[int] = None,
    ) -> "GasTrajectoryState":
        return cls(0.0, np.sort(np.asarray(positions, dtype=float)), beta, potential,
                   np.random.default_rng(seed))


def drift(state: GasTrajectoryState) -> np.ndarray:
    """
    Drift ``sum_{k != j} 1/(x_j - x_k) - W(x_j)``.

    Equal to minus :func:`~loggas.Electrostatics.base.gradient` term by
    term, so it vanishes at the electrostatic equilibrium.

    Raises:
        SingularConfigurationError: On coincident positions.
    """
    x = state.positions
    if x.size > 1 and min_pair_distance(x) == 0:
        raise SingularConfigurationError("coincident positions")
    return gas_drift(x, state.potential)


def _admissible(x: np.ndarray, potential: PotentialSpec) -> np.ndarray:
    ordered = np.all(np.diff(x, axis=-1) > 0, axis=-1)
    return ordered & np.all(potential.contains(x), axis=-1)


def _advance(
    x: np.ndarray,
    dt: float,
    noise: np.ndarray,
    beta: float,
    potential: PotentialSpec,
    noise_scale: float,
    dt_min: float,
    redraw: Callable[[int], np.ndarray],
) -> Tuple[np.ndarray, np.ndarray, int, int]:
    """Advance a batch ``(chains, n)`` by one bounced Euler-Maruyama step."""
    scale = noise_scale * np.sqrt(2.0 / beta)
    f = gas_drift(x, potential)
    h = np.full(x.shape[0], float(dt))
    noise = np.array(noise, dtype=float)
    trial = x + f * h[:, None] + scale * np.sqrt(h)[:, None] * noise
    bad = ~_admissible(trial, potential)
    halvings = resamples = 0
    attempts = np.zeros(x.shape[0], dtype=int)
    while np.any(bad):
        idx = np.flatnonzero(bad)
        halve = h[idx] * 0.5 >= dt_min
        h[idx[halve]] *= 0.5
        halvings += int(np.count_nonzero(halve))
        for i in idx[~halve]:
            if scale == 0 or attempts[i] >= MAX_RESAMPLES:
                raise StepUnderflowError(
                    f"no admissible step for chain {i} at dt_min={dt_min:g}"
                )
            noise[i] = redraw(int(i))
            attempts[i] += 1
            resamples += 1
        trial[idx] = x[idx] + f[idx] * h[idx, None] + scale * np.sqrt(h[idx])[:, None] * noise[idx]
        bad[idx] = ~_admissible(trial[idx], potential)
    return trial, h, halvings, resamples


def step(
    state: GasTrajectoryState,
    dt: float,
    rng: Optional[np.random.Generator] = None,
    noise_scale: float = 1.0,
    dt_min: Optional[float] = None,
) -> GasTrajectoryState:
    """
    One Euler-Maruyama step with the bounce policy.

    Args:
        state: Current state.
        dt: Requested step, ``> 0``.
        rng: Noise generator; defaults to ``state.rng``.
        noise_scale: Multiplies the diffusion; ``0`` gives the gradient flow.
        dt_min: Smallest step before redrawing noise; default ``dt / 2**20``.

    Returns:
        The next state; its ``time`` advances by the step actually taken.

    Raises:
        StepUnderflowError: If no admissible step exists.
    """
    if dt <= 0:
        raise ParameterDomainError(f"dt must be positive, got {dt}")
    rng = state.rng if rng is None else rng
    dt_min = dt / 2**20 if dt_min is None else dt_min
    n = state.positions.size
    x, h, halvings, resamples = _advance(
        state.positions[None, :],
        dt,
        rng.standard_normal((1, n)),
        state.beta,
        state.potential,
        noise_scale,
        dt_min,
        lambda i: rng.standard_normal(n),
    )
    return replace(
        state,
        time=state.time + float(h[0]),
        positions=x[0],
        rng=rng,
        halvings=state.halvings + halvings,
        resamples=state.resamples + resamples,
    )


@dataclass(frozen=True)
class GasTrajectory:
    """Thinned snapshots of independent chains.

    Attributes:
        times: Per-snapshot, per-chain times, shape ``(snapshots, chains)``.
        positions: Shape ``(snapshots, chains, n)``.
        metadata: Seed, ``beta``, ``dt``, burn-in, thinning, halvings and
            resamples.
    """

    times: np.ndarray = field(repr=False)
    positions: np.ndarray = field(repr=False)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def pooled(self) -> np.ndarray:
        """All recorded positions as one flat array."""
        return self.positions.reshape(-1)

    def rows(self) -> List[List[float]]:
        """CSV rows ``snapshot, chain, time, x_1 .. x_n``."""
        out = []
        for s in range(self.positions.shape[0]):
            for c in range(self.positions.shape[1]):
                out.append([s, c, float(self.times[s, c]), *self.positions[s, c]])
        return out


def burnin_steps(burnin_time: float, dt: float) -> int:
    """Steps of size *dt* that cover *burnin_time* time units."""
    if burnin_time < 0 or dt <= 0:
        raise ParameterDomainError(f"need burnin_time >= 0 and dt > 0, got {burnin_time} and {dt}")
    return int(np.ceil(burnin_time / dt - 1e-9))


def default_burnin(n: int, dt: float) -> int:
    """``10 n**2`` time units, in steps of size *dt*."""
    return burnin_steps(BURNIN_TIME_PER_CHARGE_SQUARED * n * n, dt)


def _run_chains(
    chain_ids: Sequence[int],
    x0: np.ndarray,
    potential: PotentialSpec,
    beta: float,
    dt: float,
    total: int,
    burnin: int,
    thin: int,
    seed: int,
    noise_scale: float,
    dt_min: float,
) -> Tuple[np.ndarray, np.ndarray, int, int]:
    n = x0.size
    gens = [stream_generator(seed, c) for c in chain_ids]
    x = np.tile(x0, (len(gens), 1))
    t = np.zeros(len(gens))
    snaps, times = [], []
    halvings = resamples = 0
    block = None
    for k in range(total):
        j = k % NOISE_BLOCK
        if j == 0:
            block = np.stack([g.standard_normal((NOISE_BLOCK, n)) for g in gens])
        x, h, dh, dr = _advance(
            x, dt, block[:, j, :], beta, potential, noise_scale, dt_min,
            lambda i: gens[i].standard_normal(n),
        )
        t += h
        halvings += dh
        resamples += dr
        if k + 1 > burnin and (k + 1 - burnin) % thin == 0:
            snaps.append(x.copy())
            times.append(t.copy())
    return np.array(times), np.array(snaps), halvings, resamples


def evolve(
    n: int,
    potential: PotentialSpec,
    beta: float = 1.0,
    dt: float = 1e-3,
    steps: int = 1000,
    burnin: Optional[int] = None,
    burnin_time: Optional[float] = None,
    thin: Optional[int] = None,
    chains: int = 1,
    seed: Optional[int] = None,
    initial: Optional[Sequence[float]] = None,
    noise_scale: float = 1.0,
    dt_min: Optional[float] = None,
    workers: int = 1,
    verbose: bool = False,
) -> GasTrajectory:
    """
    Run independent Dyson-gas chains and record thinned snapshots.

    Chain ``c`` draws its noise from stream ``c`` of *seed*, so the output
    does not depend on *workers*.

    Args:
        n: Number of charges.
        potential: Confining potential.
        beta: Dyson index.
        dt: Step size.
        steps: Steps after burn-in.
        burnin: Discarded steps.
        burnin_time: Discarded time, converted with :func:`burnin_steps`; used
            when *burnin* is omitted. Both omitted means :func:`default_burnin`.
        thin: Record every *thin* steps; default ``n``.
        chains: Number of independent chains.
        seed: Root seed; generated and recorded if omitted.
        initial: Starting layout; default the uniform seed layout.
        noise_scale: Diffusion multiplier (``0`` for the gradient flow).
        dt_min: Smallest halved step; default ``dt / 2**20``.
        workers: Thread count over chain groups.
        verbose: Print a summary line.

    Returns:
        A :class:`GasTrajectory`.
    """
    if dt <= 0 or steps < 0 or chains < 1 or n < 1:
        raise ParameterDomainError("need dt > 0, steps >= 0, chains >= 1 and n >= 1")
    if burnin is not None and burnin_time is not None:
        raise ParameterDomainError("give burnin or burnin_time, not both")
    if burnin is None:
        burnin = default_burnin(n, dt) if burnin_time is None else burnin_steps(burnin_time, dt)
    burnin = int(burnin)
    thin = n if thin is None else int(thin)
    if thin < 1 or burnin < 0:
        raise ParameterDomainError("thin must be >= 1 and burnin >= 0")
    seed = generate_seed() if seed is None else int(seed)
    dt_min = dt / 2**20 if dt_min is None else dt_min
    x0 = seed_positions(n, potential, "uniform") if initial is None else np.sort(np.asarray(initial, dtype=float))
    _check_layout(x0, beta, potential)
    total = burnin + steps
    groups = [list(g) for g in np.array_split(np.arange(chains), max(1, min(workers, chains)))]

    def run(group):
        return _run_chains(group, x0, potential, beta, dt, total, burnin, thin, seed, noise_scale, dt_min)

    if workers > 1 and len(groups) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, groups))
    else:
        parts = [run(g) for g in groups]
    times = np.concatenate([p[0] for p in parts], axis=1) if steps >= thin else np.zeros((0, chains))
    snaps = np.concatenate([p[1] for p in parts], axis=1) if steps >= thin else np.zeros((0, chains, n))
    halvings = sum(p[2] for p in parts)
    resamples = sum(p[3] for p in parts)
    if verbose:
        print(
            f"🌀 evolved {chains} chain(s), n={n}, beta={beta}: {snaps.shape[0]} snapshots, "
            f"{halvings} halvings, {resamples} resamples"
        )
    return GasTrajectory(
        times=times,
        positions=snaps,
        metadata={
            "seed": seed,
            "n": n,
            "beta": beta,
            "dt": dt,
            "dt_min": dt_min,
            "steps": steps,
            "burnin": burnin,
            "burnin_time": burnin * dt,
            "thin": thin,
            "chains": chains,
            "noise_scale": noise_scale,
            "halvings": halvings,
            "resamples": resamples,
            "potential": potential.to_dict(),
        },
    )


def _pool(data: Union[GasTrajectory, Sequence, np.ndarray]) -> np.ndarray:
    if isinstance(data, GasTrajectory):
        return data.pooled()
    if isinstance(data, np.ndarray):
        return data.ravel()
    items = list(data)
    if items and hasattr(items[0], "eigenvalues"):
        return np.concatenate([np.asarray(s.eigenvalues) for s in items])
    return np.asarray(items, dtype=float).ravel()


def stationarity_test(
    trajectory, direct, min_points: int = MIN_POOLED_POINTS
) -> float:
    """
    Two-sample Kolmogorov-Smirnov distance between pooled positions.

    Args:
        trajectory: A burned-in :class:`GasTrajectory` or an array of positions.
        direct: :class:`~loggas.Ensembles.base.SpectrumSample` list or array.
        min_points: Minimum pooled size on each side.

    Raises:
        InsufficientSamplesError: If either side has fewer than *min_points*.
    """
    a, b = _pool(trajectory), _pool(direct)
    if a.size < min_points or b.size < min_points:
        raise InsufficientSamplesError(
            f"need at least {min_points} pooled points per side, got {a.size} and {b.size}"
        )
    return float(ks_2samp(a, b).statistic)

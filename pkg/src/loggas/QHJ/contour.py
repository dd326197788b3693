"""
Contour integrals of the momentum function and the Burgers residual.

``J = (1/2π) ∮ p dx`` over a closed rectangle counts the moving poles it
encloses: each has residue ``-i`` and contributes ``+1``, while the fixed
part ``i W`` integrates to zero when no singularity of ``W`` is inside.
The same integral is the Berry phase of the state divided by ``2π``.

Edges are integrated with the composite trapezoid rule plus the first
Euler-Maclaurin endpoint correction, which uses ``p'`` at the corners.

The time-dependent momentum function built from moving poles obeys the
Burgers-Hopf equation

    p_t = -(i/2) p_xx + p p_x + V'/2,    V' = 2 W W' - W''

when the poles follow :func:`~loggas.Dyson.poles.pole_dynamics` and ``W`` is
at most linear (the free case ``Q = 0`` and the harmonic oscillator). For
curved ``W`` the pole flow leaves a remainder
``sum_k [W(x) - W(x_k) - W'(x)(x - x_k)] / (x - x_k)**2``.
:func:`burgers_residual` checks the equation with a forward difference in time.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from loggas.exceptions import ContourGeometryError, ParameterDomainError, PoleCollisionError
from loggas.Potentials.base import Superpotential
from loggas.QHJ.base import BoundState
from loggas.utils import min_pair_distance

MIN_POLE_DISTANCE = 1e-3
COLLISION_DISTANCE = 1e-8


@dataclass(frozen=True)
class Rectangle:
    """Closed axis-parallel rectangle, traversed counter-clockwise."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ContourGeometryError(f"degenerate rectangle {self}")

    @classmethod
    def around(cls, points: Sequence[complex], margin: float = 0.5) -> "Rectangle":
        """Smallest rectangle containing *points*, padded by *margin*."""
        z = np.asarray(points, dtype=complex)
        return cls(
            float(z.real.min() - margin),
            float(z.real.max() + margin),
            float(z.imag.min() - margin),
            float(z.imag.max() + margin),
        )

    @property
    def corners(self) -> List[complex]:
        return [
            complex(self.x_min, self.y_min),
            complex(self.x_max, self.y_min),
            complex(self.x_max, self.y_max),
            complex(self.x_min, self.y_max),
        ]

    @property
    def perimeter(self) -> float:
        return 2.0 * ((self.x_max - self.x_min) + (self.y_max - self.y_min))

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return (
            (z.real > self.x_min)
            & (z.real < self.x_max)
            & (z.imag > self.y_min)
            & (z.imag < self.y_max)
        )

    def distance(self, z) -> np.ndarray:
        """Euclidean distance from *z* to the boundary."""
        z = np.asarray(z, dtype=complex)
        x, y = z.real, z.imag
        cx = np.clip(x, self.x_min, self.x_max)
        cy = np.clip(y, self.y_min, self.y_max)
        outside = np.hypot(x - cx, y - cy)
        inside = np.minimum.reduce(
            [x - self.x_min, self.x_max - x, y - self.y_min, self.y_max - y]
        )
        return np.where(self.contains(z), inside, outside)


def _edge_integral(func, dfunc, a: complex, b: complex, nodes: int) -> complex:
    s = np.linspace(0.0, 1.0, nodes + 1)
    h = 1.0 / nodes
    span = b - a
    g = func(a + s * span) * span
    trapezoid = h * (np.sum(g) - 0.5 * (g[0] + g[-1]))
    correction = (h * h / 12.0) * (dfunc(b) - dfunc(a)) * span * span
    return trapezoid - correction


def contour_integral(func, dfunc, contour: Rectangle, nodes: int = 4096) -> complex:
    """``∮ func dz`` over *contour* with ``dfunc = func'`` for the end correction."""
    corners = contour.corners
    total = 0j
    for a, b in zip(corners, corners[1:] + corners[:1]):
        total += _edge_integral(func, dfunc, a, b, nodes)
    return total


def _check_geometry(state: BoundState, contour: Rectangle, min_distance: float) -> np.ndarray:
    poles = state.moving_poles
    fixed = np.asarray(state.envelope.singularities, dtype=complex)
    both = np.concatenate([poles, fixed])
    if both.size:
        gap = float(np.min(contour.distance(both)))
        if gap < min_distance:
            raise ContourGeometryError(
                f"contour passes within {gap:.2e} of a pole (minimum {min_distance})"
            )
    if fixed.size and np.any(contour.contains(fixed)):
        raise ContourGeometryError("contour encloses a fixed singularity of the superpotential")
    return poles


def quantization_integral(
    state: BoundState,
    contour: Rectangle,
    nodes: int = 4096,
    min_distance: float = MIN_POLE_DISTANCE,
) -> float:
    """
    ``(1/2π) ∮ p dx`` around *contour* for the momentum function of *state*.

    ``p = -i f'/f + i W`` is evaluated from the polynomial directly. Edges
    get at least *nodes* trapezoid nodes, and more when a pole is close
    relative to the edge length.

    Args:
        state: A bound state from :func:`~loggas.QHJ.base.polynomial_spectrum`.
        contour: Rectangle avoiding every pole.
        nodes: Minimum nodes per edge.
        min_distance: Minimum allowed pole-to-contour distance.

    Returns:
        The real part of the normalized integral; it equals the number of
        enclosed moving poles.

    Raises:
        ContourGeometryError: If the contour is closer than *min_distance*
            to a pole or encloses a fixed singularity.

    Example::

        state = polynomial_spectrum(make_potential("harmonic"), 3)[3]
        quantization_integral(state, Rectangle(-3, 3, -1, 1))   # 3.0
    """
    if nodes < 2:
        raise ParameterDomainError(f"nodes must be >= 2, got {nodes}")
    poles = _check_geometry(state, contour, min_distance)
    env = state.envelope
    c = state.f_coeffs
    c1, c2 = P.polyder(c), P.polyder(c, 2)

    def p(z):
        r1 = P.polyval(z, c1) / P.polyval(z, c)
        return -1j * r1 + 1j * env.W(z)

    def dp(z):
        f = P.polyval(z, c)
        r1 = P.polyval(z, c1) / f
        r2 = P.polyval(z, c2) / f
        return -1j * (r2 - r1 * r1) + 1j * env.dW(z)

    gap = float(np.min(contour.distance(poles))) if poles.size else np.inf
    longest = max(contour.x_max - contour.x_min, contour.y_max - contour.y_min)
    per_edge = int(min(max(nodes, np.ceil(20.0 * longest / gap) if np.isfinite(gap) else nodes), 2**20))
    return float((contour_integral(p, dp, contour, per_edge) / (2.0 * np.pi)).real)


berry_phase = quantization_integral


def _poles_of(entry) -> np.ndarray:
    return np.asarray(getattr(entry, "poles", entry), dtype=complex)


def _momentum(poles: np.ndarray, sp: Superpotential, x: np.ndarray):
    d = x[:, None] - poles[None, :]
    p = np.sum(-1j / d, axis=1) + 1j * sp.W(x)
    px = np.sum(1j / d**2, axis=1) + 1j * sp.dW(x)
    pxx = np.sum(-2j / d**3, axis=1) + 1j * sp.d2W(x)
    return p, px, pxx


def default_probes(poles: np.ndarray, count: int = 32) -> np.ndarray:
    """Complex probe points on a line parallel to, and clear of, the poles."""
    lo, hi = poles.real.min() - 1.0, poles.real.max() + 1.0
    offset = np.max(np.abs(poles.imag)) + 1.0
    return np.linspace(lo, hi, count) + 1j * offset


def burgers_residual(
    trajectory: Sequence,
    superpotential: Optional[Superpotential] = None,
    dt: float = 1e-3,
    probes: Optional[Sequence[complex]] = None,
) -> float:
    """
    Max residual of the Burgers-Hopf equation along a pole trajectory.

    ``p_t`` is the forward difference between consecutive pole sets; the
    right-hand side is evaluated at the earlier time, so the residual is
    ``O(dt)``.

    Args:
        trajectory: Pole sets (arrays, or states with a ``poles`` attribute)
            at uniform spacing *dt*.
        superpotential: ``W``; ``None`` means ``Q = 0``.
        dt: Time step between entries.
        probes: Evaluation points; defaults to :func:`default_probes`.

    Raises:
        PoleCollisionError: If two poles come within ``1e-8``.
        ParameterDomainError: On fewer than two entries or ``dt <= 0``.
    """
    if dt <= 0:
        raise ParameterDomainError(f"dt must be positive, got {dt}")
    frames = [_poles_of(entry) for entry in trajectory]
    if len(frames) < 2:
        raise ParameterDomainError("a Burgers residual needs at least two time slices")
    for i, poles in enumerate(frames):
        if min_pair_distance(poles) < COLLISION_DISTANCE:
            raise PoleCollisionError(f"poles collide in time slice {i}", time=i * dt)
    sp = Superpotential.constant(0.0) if superpotential is None else superpotential
    x = default_probes(frames[0]) if probes is None else np.asarray(probes, dtype=complex)
    v_prime = sp.potential_derivative(x)
    worst = 0.0
    for now, nxt in zip(frames, frames[1:]):
        p, px, pxx = _momentum(now, sp, x)
        p_next, _, _ = _momentum(nxt, sp, x)
        lhs = (p_next - p) / dt
        rhs = -0.5j * pxx + p * px + 0.5 * v_prime
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst

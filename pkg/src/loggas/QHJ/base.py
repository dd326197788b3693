"""
Quantum Hamilton-Jacobi engine.

The quantum momentum function of a bound state ``psi = f * exp(-∫W)`` is

    p(x) = -i f'(x) / f(x) + i W(x) = sum_k -i / (x - x_k) + Q(x)

with moving poles ``x_k`` at the zeros of the polynomial ``f`` and the fixed
part ``Q = i W``. It satisfies the Riccati equation ``p**2 - i p' = E - V``
(``hbar = 1``, ``2m = 1``). Substituting the pole form gives the linear ODE

    f'' - 2 W f' + (E - V + W**2 - W') f = 0

which for every catalog entry with polynomial states reduces, after a
change of variable and clearing denominators, to
``a2 f'' + a1 f' + lam * b * f = 0`` with polynomial ``a2, a1, b``. On the
space of degree ``<= d`` polynomials this is a finite matrix ``A + lam B``;
``lam`` is fixed by the leading coefficient and accepted only if the
matrix is numerically singular.

====================  ============  ==========================  ===============
potential             variable      ODE                          energy
====================  ============  ==========================  ===============
HarmonicOscillator    ``x``         ``f'' - 2x f' + lam f``      ``1 + lam``
Coulomb               ``2 kappa r`` ``t g'' + (2l+2-t) g' + lam g``  ``-kappa_n**2``
Oscillator3D          ``x``         ``x f'' + (2l+2-x**2) f' + lam x f``  ``l + 3/2 + lam``
DeformedOscillator    ``x**2``      cleared X1 operator          ``2g + 3 + 4 lam``
====================  ============  ==========================  ===============

Morse and Scarf have non-polynomial coefficients in ``x``; their spectra
come from :func:`~loggas.Potentials.susy.shape_invariant_spectrum`.

Example::

    from loggas.QHJ.base import polynomial_spectrum
    from loggas.Potentials.base import make_potential

    states = polynomial_spectrum(make_potential("harmonic"), 3)
    [s.energy for s in states]       # [1.0, 3.0, 5.0, 7.0]
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from loggas.exceptions import (
    ParameterDomainError,
    QuantizationError,
    SingularConfigurationError,
    UnsupportedPotentialError,
)
from loggas.OrthoPoly.exceptional import solve_exceptional
from loggas.Potentials.base import (
    Evaluator,
    PotentialName,
    PotentialSpec,
    Superpotential,
)

NULLSPACE_RTOL = 1e-10
POLE_TOL = 1e-12


@dataclass(frozen=True)
class MomentumFunction:
    """Pole form of the quantum momentum function.

    Attributes:
        moving_poles: Zeros of ``f`` (real or complex, simple).
        superpotential: ``W``; the fixed part is ``Q = i W``.
        V: Potential evaluator used by the Riccati residual.
    """

    moving_poles: np.ndarray
    superpotential: Superpotential = field(repr=False)
    V: Optional[Evaluator] = field(default=None, repr=False)

    def __post_init__(self):
        poles = np.asarray(self.moving_poles, dtype=complex).ravel()
        if poles.size > 1:
            d = np.abs(poles[:, None] - poles[None, :])
            d[np.diag_indices(poles.size)] = np.inf
            if d.min() < POLE_TOL:
                raise SingularConfigurationError("moving poles must be simple")
        object.__setattr__(self, "moving_poles", poles)

    def _offsets(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        d = x[..., None] - self.moving_poles
        if d.size and np.min(np.abs(d)) < POLE_TOL:
            raise SingularConfigurationError("momentum function evaluated at a moving pole")
        return d

    def Q(self, x):
        """Fixed part ``i W(x)``."""
        return self.superpotential.Q(np.asarray(x, dtype=complex))

    def __call__(self, x):
        """``sum -i/(x - x_k) + i W(x)``."""
        d = self._offsets(x)
        return np.sum(-1j / d, axis=-1) + self.Q(x)

    def derivative(self, x):
        """``p'(x) = sum i/(x - x_k)**2 + i W'(x)``."""
        d = self._offsets(x)
        return np.sum(1j / d**2, axis=-1) + 1j * self.superpotential.dW(np.asarray(x, dtype=complex))


def riccati_residual(p: MomentumFunction, E: float, x, V: Optional[Evaluator] = None):
    """
    ``p(x)**2 - i p'(x) - (E - V(x))``; zero for an exact bound state.

    Args:
        p: Momentum function.
        E: Energy.
        x: Evaluation point(s), not at a pole.
        V: Potential; defaults to ``p.V``.

    Raises:
        SingularConfigurationError: At a pole of ``p``.
        ParameterDomainError: If no potential is available.

    Example::

        harmonic = make_potential("harmonic")
        p = MomentumFunction([], harmonic.superpotential, harmonic.V)
        riccati_residual(p, 1.0, 0.3)   # 0j
        riccati_residual(p, 2.0, 0.3)   # (-1+0j)
    """
    V = p.V if V is None else V
    if V is None:
        raise ParameterDomainError("riccati_residual needs a potential V")
    value = p(x)
    return value * value - 1j * p.derivative(x) - (E - V(np.asarray(x)))


@dataclass(frozen=True)
class BoundState:
    """A polynomial bound state ``psi = f * exp(-∫envelope)``.

    Attributes:
        index: Node count ``n`` inside the domain.
        energy: ``E``.
        eigenvalue: The ODE eigenvalue ``lam`` (``n`` for Coulomb).
        f_coeffs: Monic power-basis coefficients of ``f`` in ``x``.
        potential: The catalog potential.
        envelope: Superpotential whose antiderivative gives the envelope;
            it differs from ``potential.superpotential`` for Coulomb
            (level-dependent ``kappa_n``) and the deformed oscillator.
    """

    index: int
    energy: float
    eigenvalue: float
    f_coeffs: np.ndarray = field(repr=False)
    potential: PotentialSpec = field(repr=False)
    envelope: Superpotential = field(repr=False)

    @property
    def degree(self) -> int:
        return int(self.f_coeffs.size - 1)

    @property
    def moving_poles(self) -> np.ndarray:
        """All zeros of ``f``; even polynomials are solved in ``x**2``."""
        c = self.f_coeffs
        if c.size <= 1:
            return np.zeros(0, dtype=complex)
        if c.size % 2 == 1 and not np.any(c[1::2]):
            z = P.polyroots(c[0::2]).astype(complex)
            w = np.sqrt(z)
            return np.concatenate([-w, w])
        return P.polyroots(c).astype(complex)

    @property
    def nodes(self) -> np.ndarray:
        """Sorted real zeros of ``f`` inside the potential domain."""
        poles = self.moving_poles
        real = np.abs(poles.imag) <= 1e-7 * (1.0 + np.abs(poles.real))
        x = np.sort(poles.real[real])
        return x[self.potential.contains(x)]

    def f(self, x):
        return P.polyval(x, self.f_coeffs)

    def momentum(self) -> MomentumFunction:
        return MomentumFunction(self.moving_poles, self.envelope, self.potential.V)

    def to_dict(self) -> Dict:
        return {
            "n": self.index,
            "E": self.energy,
            "eigenvalue": self.eigenvalue,
            "f_coeffs": self.f_coeffs,
            "nodes": self.nodes,
        }


def solve_polynomial_ode(
    a2: Sequence[float], a1: Sequence[float], b: Sequence[float], degree: int
) -> Tuple[float, np.ndarray]:
    """
    Polynomial solution of ``a2 y'' + a1 y' + lam b y = 0`` of given degree.

    ``lam`` is read off the leading coefficient; the operator matrix on
    degree ``<= degree`` must then have a null vector (smallest singular
    value below ``1e-10`` of the largest). The monic solution is found by
    back substitution: column ``j`` first appears in row ``j + deg b``, so
    the rows form a triangular system that keeps every coefficient to
    relative precision even when they span many orders of magnitude.

    Returns:
        ``(lam, coefficients)`` with ascending, monic coefficients.

    Raises:
        QuantizationError: If no polynomial solution of that degree exists.
    """
    a2, a1, b = (np.atleast_1d(np.asarray(c, dtype=float)) for c in (a2, a1, b))
    d = int(degree)
    rows = d + max(a2.size - 3, a1.size - 2, b.size - 1, 0) + 1
    A = np.zeros((rows, d + 1))
    B = np.zeros((rows, d + 1))
    for j in range(d + 1):
        e = np.zeros(j + 1)
        e[j] = 1.0
        col = P.polyadd(P.polymul(a2, P.polyder(e, 2)), P.polymul(a1, P.polyder(e)))
        A[: col.size, j] = col
        col = P.polymul(b, e)
        B[: col.size, j] = col
    top = d + b.size - 1
    if B[top, d] == 0:
        raise QuantizationError("degenerate spectral term in the polynomial ODE")
    lam = -A[top, d] / B[top, d]
    M = A + lam * B
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] > NULLSPACE_RTOL * s[0]:
        raise QuantizationError(
            f"no polynomial solution of degree {d}: smallest singular value "
            f"{s[-1]:.3e} vs scale {s[0]:.3e}"
        )
    coeffs = np.zeros(d + 1)
    coeffs[d] = 1.0
    shift = b.size - 1
    for j in range(d - 1, -1, -1):
        row = M[j + shift]
        if row[j] == 0:
            raise QuantizationError(f"degenerate pivot at coefficient {j} of degree {d}")
        coeffs[j] = -np.dot(row[j + 1 :], coeffs[j + 1 :]) / row[j]
    scale = np.abs(M) @ np.abs(coeffs)
    residual = np.abs(M @ coeffs)
    if np.any(residual > NULLSPACE_RTOL * np.maximum(scale, np.finfo(float).tiny)):
        raise QuantizationError(f"polynomial of degree {d} does not solve the ODE")
    return float(lam), coeffs


def _harmonic_state(spec: PotentialSpec, n: int) -> BoundState:
    lam, c = solve_polynomial_ode([1.0], [0.0, -2.0], [1.0], n)
    return BoundState(n, spec.E0 + lam, lam, c, spec, spec.superpotential)


def _coulomb_state(spec: PotentialSpec, n: int) -> BoundState:
    l, Z = spec.params["l"], spec.params["Z"]
    lam, g = solve_polynomial_ode([0.0, 1.0], [2.0 * (l + 1.0), -1.0], [1.0], n)
    kappa = Z / (2.0 * (n + l + 1.0))
    scale = 2.0 * kappa
    f = g * scale ** (np.arange(n + 1) - n)
    return BoundState(n, -kappa * kappa, lam, f, spec, Superpotential.coulomb(l, kappa))


def _oscillator_3d_state(spec: PotentialSpec, n: int) -> BoundState:
    l = spec.params["l"]
    lam, c = solve_polynomial_ode([0.0, 1.0], [2.0 * (l + 1.0), 0.0, -1.0], [0.0, 1.0], 2 * n)
    c[1::2] = 0.0
    return BoundState(n, spec.E0 + lam, lam, c, spec, spec.superpotential)


def deformed_envelope(g: float) -> Superpotential:
    """Envelope ``x - (g+1)/x + 2x/(x**2 + k)`` of the X1 states, ``k = g + 1/2``."""
    k = g + 0.5
    c = g + 1.0

    def W(x):
        x = np.asarray(x)
        return x - c / x + 2.0 * x / (x * x + k)

    def dW(x):
        x = np.asarray(x)
        u = x * x
        return 1.0 + c / u + 2.0 * (k - u) / (u + k) ** 2

    def d2W(x):
        x = np.asarray(x)
        u = x * x
        return -2.0 * c / (u * x) + 4.0 * x * (u - 3.0 * k) / (u + k) ** 3

    def integral(x):
        x = np.asarray(x)
        return 0.5 * x * x - c * np.log(x) + np.log(x * x + k)

    rk = np.sqrt(k)
    return Superpotential(W, dW, d2W, integral, singularities=(0.0, 1j * rk, -1j * rk))


def _deformed_state(spec: PotentialSpec, n: int) -> BoundState:
    g = spec.params["g"]
    sol = solve_exceptional(g, n + 1)
    c = np.zeros(2 * sol.coefficients.size - 1)
    c[0::2] = sol.coefficients
    c = c / c[-1]
    lam = sol.eigenvalue
    return BoundState(n, spec.E0 + 4.0 * lam, lam, c, spec, deformed_envelope(g))


_QUANTIZERS: Dict[PotentialName, Callable[[PotentialSpec, int], BoundState]] = {
    PotentialName.HARMONIC: _harmonic_state,
    PotentialName.COULOMB: _coulomb_state,
    PotentialName.OSCILLATOR_3D: _oscillator_3d_state,
    PotentialName.DEFORMED: _deformed_state,
}


def polynomial_spectrum(
    potential: PotentialSpec, n_max: int, workers: int = 1
) -> List[BoundState]:
    """
    Bound states ``0 .. n_max`` from polynomial solutions of the QHJ ODE.

    Args:
        potential: Harmonic, Coulomb, Oscillator3D or DeformedOscillator.
        n_max: Highest node count.
        workers: Levels are independent; ``workers > 1`` solves them on a
            thread pool.

    Returns:
        States ordered by index.

    Raises:
        UnsupportedPotentialError: For Morse and Scarf.
        ParameterDomainError: If ``n_max < 0``.
        QuantizationError: If some level has no polynomial solution.
    """
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be >= 0, got {n_max}")
    if potential.name not in _QUANTIZERS:
        raise UnsupportedPotentialError(
            f"{potential.name.value} has no polynomial QHJ reduction; "
            "use shape_invariant_spectrum"
        )
    quantize = _QUANTIZERS[potential.name]
    levels = range(int(n_max) + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda n: quantize(potential, n), levels))
    return [quantize(potential, n) for n in levels]


def _state_grid(state: BoundState, grid) -> np.ndarray:
    return state.potential.probe_grid() if grid is None else np.asarray(grid, dtype=float)


def wavefunction(state: BoundState, x):
    """Unnormalized ``psi(x) = f(x) * exp(-∫W(x))``."""
    x = np.asarray(x, dtype=float)
    return state.f(x) * np.exp(-state.envelope.integral(x))


def schrodinger_residual(state: BoundState, grid=None) -> float:
    """Relative residual of ``-psi'' + V psi = E psi`` on *grid*.

    ``psi''`` is taken analytically from
    ``(f'' - 2W f' + (W**2 - W') f) exp(-∫W)``.
    """
    x = _state_grid(state, grid)
    env = state.envelope
    f = state.f(x)
    f1 = P.polyval(x, P.polyder(state.f_coeffs))
    f2 = P.polyval(x, P.polyder(state.f_coeffs, 2))
    w = env.W(x)
    e = np.exp(-env.integral(x))
    psi = f * e
    psi2 = (f2 - 2.0 * w * f1 + (w * w - env.dW(x)) * f) * e
    vpsi = state.potential.V(x) * psi
    scale = np.max(np.abs(psi2) + np.abs(vpsi) + abs(state.energy) * np.abs(psi))
    return float(np.max(np.abs(-psi2 + vpsi - state.energy * psi)) / scale)


def state_riccati_residual(state: BoundState, grid=None) -> float:
    """
    Relative Riccati residual of a bound state on *grid*.

    ``p`` and ``p'`` come from ``f'/f`` directly; each point's residual is
    divided by ``|p**2| + |p'| + |E - V|``.
    """
    x = _state_grid(state, grid)
    env = state.envelope
    f = state.f(x)
    r1 = P.polyval(x, P.polyder(state.f_coeffs)) / f
    r2 = P.polyval(x, P.polyder(state.f_coeffs, 2)) / f
    p = -1j * r1 + 1j * env.W(x)
    dp = -1j * (r2 - r1 * r1) + 1j * env.dW(x)
    rhs = state.energy - state.potential.V(x)
    residual = p * p - 1j * dp - rhs
    scale = np.abs(p * p) + np.abs(dp) + np.abs(rhs)
    return float(np.max(np.abs(residual) / scale))

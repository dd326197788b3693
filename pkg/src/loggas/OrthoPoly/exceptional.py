"""
X1 exceptional Laguerre polynomials from the deformed radial oscillator.

With ``k = g + 1/2`` and ``z = x**2``, the momentum function of
:func:`~loggas.Potentials.base.make_potential` ``("DeformedOscillator")``
has moving poles at the zeros of a polynomial ``y(z)`` that solves, after
clearing the rational denominator ``z + k``,

    (z + k) z y'' - (z - k)(z + k + 1) y' + (z - k) y + lam (z + k) y = 0

with ``lam = n - 1`` for degree ``n >= 1``. The operator raises degree by
one, so on polynomials of degree ``<= n`` it is an ``(n + 2) x (n + 1)``
matrix; a polynomial solution exists exactly where that matrix has a null
vector. Column ``j`` first reaches row ``j + 1``, so the null vector follows
by back substitution from the leading coefficient
``(-1)**n / (n - 1)!``, which makes it the classical combination

    L̂_n(z) = -(z + k + 1) L_{n-1}^(k)(z) + L_{n-2}^(k)(z)

The family is orthogonal against ``z**k exp(-z) / (z + k)**2``; in ``x`` the
orthogonality density is the squared envelope
``x**(2g+2) exp(-x**2) / (x**2 + k)**2`` of the wave functions.

Example::

    from loggas.OrthoPoly.exceptional import solve_exceptional, exceptional_roots

    sol = solve_exceptional(g=1.0, n=3)
    sol.residual                   # < 1e-8
    exceptional_roots(1.0, 3)      # one root below -k, two positive
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Optional, Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.integrate import quad

from loggas.exceptions import ParameterDomainError, QuantizationError
from loggas.OrthoPoly.base import PolynomialFamily, coefficients, weight
from loggas.utils import probe_grid

NULLSPACE_RTOL = 1e-10


@dataclass(frozen=True)
class ExceptionalSolution:
    """A solved X1 polynomial.

    Attributes:
        g: Deformation parameter.
        degree: Degree ``n`` in ``z = x**2``.
        coefficients: Ascending power-basis coefficients in ``z``.
        eigenvalue: ``lam = n - 1``.
        normalization: ``∫_0^inf z**k e**-z / (z+k)**2 * L̂_n(z)**2 dz``.
        residual: Relative residual of the cleared ODE on the probe grid.
    """

    g: float
    degree: int
    coefficients: np.ndarray = field(repr=False)
    eigenvalue: float
    normalization: float
    residual: float

    @property
    def k(self) -> float:
        return self.g + 0.5

    def in_z(self, z):
        """``L̂_n(z)``."""
        return P.polyval(np.asarray(z, dtype=float), self.coefficients)

    def __call__(self, x):
        """``L̂_n(x**2)``."""
        x = np.asarray(x, dtype=float)
        return self.in_z(x * x)


def _check(g: float, n: int) -> None:
    if not g > 0:
        raise ParameterDomainError(f"exceptional family requires g > 0, got g={g}")
    if int(n) != n or n < 1:
        raise ParameterDomainError(f"exceptional degree must be an integer >= 1, got {n}")


def _operator_terms(k: float, c: np.ndarray):
    """The four polynomial pieces of the cleared operator applied to *c*."""
    z_plus_k = np.array([k, 1.0])
    z_minus_k = np.array([-k, 1.0])
    second = P.polymul(P.polymul(z_plus_k, [0.0, 1.0]), P.polyder(c, 2))
    first = -P.polymul(P.polymul(z_minus_k, [k + 1.0, 1.0]), P.polyder(c))
    zeroth = P.polymul(z_minus_k, c)
    spectral = P.polymul(z_plus_k, c)
    return second, first, zeroth, spectral


def _operator_matrix(k: float, n: int, lam: float) -> np.ndarray:
    matrix = np.zeros((n + 2, n + 1))
    for j in range(n + 1):
        basis = np.zeros(j + 1)
        basis[j] = 1.0
        second, first, zeroth, spectral = _operator_terms(k, basis)
        column = P.polyadd(P.polyadd(second, first), P.polyadd(zeroth, lam * spectral))
        matrix[: column.size, j] = column
    return matrix


def cleared_residual(g: float, coeffs: np.ndarray, lam: float, z=None) -> float:
    """
    Relative residual of the cleared ODE for coefficient vector *coeffs*.

    The maximum of ``|T[y]|`` over the grid is divided by the maximum of
    the summed magnitudes of its four terms.
    """
    k = g + 0.5
    n = len(coeffs) - 1
    if z is None:
        z = probe_grid(0.0, 4.0 * n + 2.0 * k + 10.0)
    z = np.asarray(z, dtype=float)
    parts = [P.polyval(z, t) for t in _operator_terms(k, np.asarray(coeffs, dtype=float))]
    parts[3] = lam * parts[3]
    total = parts[0] + parts[1] + parts[2] + parts[3]
    scale = np.max(sum(np.abs(p) for p in parts))
    return float(np.max(np.abs(total)) / scale) if scale > 0 else 0.0


def closed_form_coefficients(g: float, n: int) -> np.ndarray:
    """Coefficients of ``-(z+k+1) L_{n-1}^(k) + L_{n-2}^(k)`` from classical Laguerre."""
    _check(g, n)
    k = g + 0.5
    upper = coefficients(PolynomialFamily.laguerre(k, n - 1))
    result = -P.polymul([k + 1.0, 1.0], upper)
    if n >= 2:
        result = P.polyadd(result, coefficients(PolynomialFamily.laguerre(k, n - 2)))
    return result


def exceptional_weight(g: float, z):
    """Orthogonality weight ``z**k exp(-z) / (z + k)**2`` in ``z``."""
    k = g + 0.5
    z = np.asarray(z, dtype=float)
    return z**k * np.exp(-z) / (z + k) ** 2


def envelope(g: float, x):
    """Wave-function envelope ``x**(g+1) exp(-x**2/2) / (x**2 + k)``."""
    k = g + 0.5
    x = np.asarray(x, dtype=float)
    return x ** (g + 1.0) * np.exp(-0.5 * x * x) / (x * x + k)


def _x_limit(g: float, n: int) -> float:
    return float(np.sqrt(4.0 * n + 2.0 * g + 80.0))


@lru_cache(maxsize=256)
def _solve(g: float, n: int) -> ExceptionalSolution:
    k = g + 0.5
    lam = float(n - 1)
    matrix = _operator_matrix(k, n, lam)
    s = np.linalg.svd(matrix, compute_uv=False)
    if s[-1] > NULLSPACE_RTOL * s[0]:
        raise QuantizationError(
            f"no X1 polynomial of degree {n} for g={g}: "
            f"smallest singular value {s[-1]:.3e} vs scale {s[0]:.3e}"
        )
    # row j + 1 pivots on column j with value n - j
    c = np.zeros(n + 1)
    c[n] = (-1.0) ** n / factorial(n - 1)
    for j in range(n - 1, -1, -1):
        row = matrix[j + 1]
        c[j] = -np.dot(row[j + 1 :], c[j + 1 :]) / row[j]
    c.setflags(write=False)
    residual = cleared_residual(g, c, lam)
    norm, _ = quad(
        lambda x: 2.0 * envelope(g, x) ** 2 * P.polyval(x * x, c) ** 2,
        0.0,
        _x_limit(g, n),
        limit=400,
        epsabs=1e-13,
        epsrel=1e-12,
    )
    return ExceptionalSolution(
        g=g, degree=n, coefficients=c, eigenvalue=lam, normalization=norm, residual=residual
    )


def solve_exceptional(g: float, n: int) -> ExceptionalSolution:
    """
    Solve the cleared deformed-oscillator ODE for the degree-*n* X1 polynomial.

    Args:
        g: Deformation parameter, ``g > 0``.
        n: Degree in ``z = x**2``, ``n >= 1``.

    Returns:
        The :class:`ExceptionalSolution`; results are cached per ``(g, n)``.

    Raises:
        ParameterDomainError: On ``g <= 0`` or ``n < 1``.
        QuantizationError: If the operator matrix has no null vector.
    """
    _check(g, n)
    return _solve(float(g), int(n))


def exceptional_roots(g: float, n: int) -> np.ndarray:
    """Zeros in ``z`` of ``L̂_n``, from the companion matrix of its coefficients.

    Exactly one zero is negative (below ``-k``); the others are positive
    and are the squared radial node positions.
    """
    z = P.polyroots(solve_exceptional(g, n).coefficients)
    if np.max(np.abs(np.imag(z)), initial=0.0) > 1e-8 * max(1.0, np.max(np.abs(z))):
        return np.sort_complex(z)
    return np.sort(np.real(z))


def wavefunction(g: float, n: int, x):
    """Unnormalized X1 state ``envelope(x) * L̂_n(x**2)``; energy ``4(n-1) + 2g + 3``."""
    return envelope(g, x) * solve_exceptional(g, n)(x)


def state_energy(g: float, n: int) -> float:
    """Energy of :func:`wavefunction` in the deformed-oscillator potential."""
    _check(g, n)
    return 4.0 * (n - 1) + 2.0 * g + 3.0


def orthogonality(g: float, m: int, n: int) -> float:
    """``|<psi_m, psi_n>| / sqrt(<psi_m, psi_m> <psi_n, psi_n>)`` on ``[0, inf)``."""
    a, b = solve_exceptional(g, m), solve_exceptional(g, n)
    overlap, _ = quad(
        lambda x: envelope(g, x) ** 2 * a(x) * b(x),
        0.0,
        _x_limit(g, max(m, n)),
        limit=400,
        epsabs=1e-13,
        epsrel=1e-12,
    )
    # both normalizations carry the same Jacobian factor 2
    return float(abs(2.0 * overlap) / np.sqrt(a.normalization * b.normalization))


def denominator(g: float, x):
    """JPDF denominator ``L_1^(2g-1)(-x**2) = 2g + x**2``."""
    x = np.asarray(x, dtype=float)
    return 2.0 * g + x * x


@dataclass(frozen=True)
class EnvelopeSquareRelation:
    """Comparison of the squared wave-function envelope with both weights.

    Attributes:
        x: Sample points.
        squared_envelope: ``envelope(x)**2``.
        jpdf_weight: The ``weight`` of the exceptional family.
        square_residual: Max relative gap between the squared envelope and
            ``x * w(x**2)``, the z-weight pulled back to ``x``.
        ratio_spread: ``(max - min) / mean`` of ``jpdf_weight / squared_envelope``;
            zero iff the JPDF weight is a multiple of the squared envelope.
    """

    x: np.ndarray = field(repr=False)
    squared_envelope: np.ndarray = field(repr=False)
    jpdf_weight: np.ndarray = field(repr=False)
    square_residual: float
    ratio_spread: float

    @property
    def is_square(self) -> bool:
        return self.ratio_spread < 1e-10


def envelope_square_relation(g: float, x: Optional[Union[np.ndarray, list]] = None) -> EnvelopeSquareRelation:
    """Check which weight the squared envelope actually is.

    The wave-function denominator is ``L_1^(g-1/2)(-x**2) = x**2 + k``, and
    its square gives the orthogonality weight. The JPDF formula uses
    ``L_1^(2g-1)(-x**2) = x**2 + 2g`` unsquared, so the two differ by the
    non-constant factor ``(x**2 + k)**2 / (x**2 + 2g)``.
    """
    _check(g, 1)
    x = probe_grid(0.05, 6.0) if x is None else np.asarray(x, dtype=float)
    sq = envelope(g, x) ** 2
    pulled_back = x * exceptional_weight(g, x * x)
    jpdf = np.asarray(weight(PolynomialFamily.exceptional_laguerre(g), x))
    ratio = jpdf / sq
    return EnvelopeSquareRelation(
        x=x,
        squared_envelope=sq,
        jpdf_weight=jpdf,
        square_residual=float(np.max(np.abs(sq - pulled_back) / np.abs(sq))),
        ratio_spread=float((ratio.max() - ratio.min()) / ratio.mean()),
    )

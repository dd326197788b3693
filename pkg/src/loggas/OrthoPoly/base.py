"""
Classical orthogonal polynomials: evaluation, weights, roots and quadrature.

Families and their conventions:

===========================  ==============  ==============================
family                       interval        weight
===========================  ==============  ==============================
Hermite (physicists')        (-inf, inf)     ``exp(-x**2)``
Laguerre ``L^(a)``           [0, inf)        ``x**a exp(-x)``
Jacobi ``P^(a,b)``           [-1, 1]         ``(1-x)**a (1+x)**b``
Exceptional Laguerre (X1)    [0, inf)        see :mod:`~loggas.OrthoPoly.exceptional`
===========================  ==============  ==============================

Jacobi follows the usual ``P^(a,b)`` convention: *a* is the exponent at
``x = 1`` and *b* at ``x = -1``, so ``P_n^(a,b)(-x) = (-1)**n P_n^(b,a)(x)``.
A weight written ``(1+x)**a (1-x)**b`` is the family ``jacobi(b, a)``.

Values come from the three-term recurrences; roots are eigenvalues of the
symmetric tridiagonal (Jacobi) matrix of the monic recurrence, computed
with :func:`scipy.linalg.eigh_tridiagonal`. The matching Gauss weights come
from the first components of the eigenvectors.

Example::

    from loggas.OrthoPoly.base import PolynomialFamily, evaluate, roots

    h2 = PolynomialFamily.hermite(2)
    evaluate(h2, 0.0)        # -2.0
    roots(h2)                # [-0.7071..., 0.7071...]
"""

import warnings
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from loggas.exceptions import OutOfIntervalWarning, ParameterDomainError
from loggas.utils import write_csv


class FamilyKind(str, Enum):
    HERMITE = "Hermite"
    LAGUERRE = "Laguerre"
    JACOBI = "Jacobi"
    EXCEPTIONAL_LAGUERRE = "ExceptionalLaguerre"


@dataclass(frozen=True)
class PolynomialFamily:
    """A polynomial family tag plus degree.

    Use the named constructors; they validate parameter ranges.

    Attributes:
        kind: Family.
        degree: Polynomial degree (in ``x**2`` for the exceptional family).
        a: Laguerre/Jacobi parameter, ``a > -1``.
        b: Jacobi parameter, ``b > -1``.
        g: Exceptional deformation parameter, ``g > 0``.
        l: Exceptional codimension; only ``1`` (X1) is supported.
    """

    kind: FamilyKind
    degree: int = 0
    a: float = 0.0
    b: float = 0.0
    g: float = 0.0
    l: int = 1

    def __post_init__(self):
        if int(self.degree) != self.degree or self.degree < 0:
            raise ParameterDomainError(f"degree must be a nonnegative integer, got {self.degree}")
        if self.kind in (FamilyKind.LAGUERRE, FamilyKind.JACOBI) and not self.a > -1:
            raise ParameterDomainError(f"{self.kind.value} requires a > -1, got a={self.a}")
        if self.kind is FamilyKind.JACOBI and not self.b > -1:
            raise ParameterDomainError(f"Jacobi requires b > -1, got b={self.b}")
        if self.kind is FamilyKind.EXCEPTIONAL_LAGUERRE:
            if not self.g > 0:
                raise ParameterDomainError(f"ExceptionalLaguerre requires g > 0, got g={self.g}")
            if self.l != 1:
                raise ParameterDomainError(
                    f"only the X1 exceptional family (l = 1) is supported, got l={self.l}"
                )
            if self.degree < 1:
                raise ParameterDomainError("the X1 family starts at degree 1")

    @classmethod
    def hermite(cls, degree: int = 0) -> "PolynomialFamily":
        return cls(FamilyKind.HERMITE, degree)

    @classmethod
    def laguerre(cls, a: float = 0.0, degree: int = 0) -> "PolynomialFamily":
        return cls(FamilyKind.LAGUERRE, degree, a=float(a))

    @classmethod
    def jacobi(cls, a: float = 0.0, b: float = 0.0, degree: int = 0) -> "PolynomialFamily":
        return cls(FamilyKind.JACOBI, degree, a=float(a), b=float(b))

    @classmethod
    def exceptional_laguerre(cls, g: float, degree: int = 1, l: int = 1) -> "PolynomialFamily":
        return cls(FamilyKind.EXCEPTIONAL_LAGUERRE, degree, g=float(g), l=l)

    def with_degree(self, degree: int) -> "PolynomialFamily":
        return replace(self, degree=degree)

    @property
    def is_classical(self) -> bool:
        return self.kind is not FamilyKind.EXCEPTIONAL_LAGUERRE

    @property
    def interval(self) -> Tuple[float, float]:
        """Closed natural interval of the family."""
        if self.kind is FamilyKind.HERMITE:
            return (-np.inf, np.inf)
        if self.kind is FamilyKind.JACOBI:
            return (-1.0, 1.0)
        return (0.0, np.inf)

    def contains(self, x) -> np.ndarray:
        lo, hi = self.interval
        x = np.asarray(x, dtype=float)
        return (x >= lo) & (x <= hi)


def _warn_outside(fam: PolynomialFamily, x: np.ndarray) -> None:
    if not np.all(fam.contains(x)):
        warnings.warn(
            f"{fam.kind.value} evaluated outside its natural interval {fam.interval}",
            OutOfIntervalWarning,
            stacklevel=3,
        )


def _as_output(values: np.ndarray, x) -> Union[float, np.ndarray]:
    return float(values) if np.ndim(x) == 0 else values


def _classical_values(fam: PolynomialFamily, x: np.ndarray, n: int) -> np.ndarray:
    """Three-term recurrence for degree *n* of a classical family."""
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    a, b = fam.a, fam.b
    if fam.kind is FamilyKind.HERMITE:
        p = 2.0 * x
        for k in range(1, n):
            p_prev, p = p, 2.0 * x * p - 2.0 * k * p_prev
        return p
    if fam.kind is FamilyKind.LAGUERRE:
        p = 1.0 + a - x
        for k in range(1, n):
            p_prev, p = p, ((2 * k + 1 + a - x) * p - (k + a) * p_prev) / (k + 1)
        return p
    p = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        c2 = (s + 1) * ((s + 2) * s * x + a * a - b * b)
        c3 = 2.0 * (k + a) * (k + b) * (s + 2)
        p_prev, p = p, (c2 * p - c3 * p_prev) / c1
    return p


def evaluate(fam: PolynomialFamily, x) -> Union[float, np.ndarray]:
    """
    Value of the degree-``fam.degree`` polynomial at *x*.

    Evaluation outside the natural interval is allowed but raises an
    :class:`~loggas.exceptions.OutOfIntervalWarning`. For the exceptional
    family *x* is the radial coordinate and the value is ``L̂_n(x**2)``.

    Args:
        fam: Family and degree.
        x: Scalar or array.

    Returns:
        A float for scalar *x*, otherwise an array.
    """
    xa = np.asarray(x, dtype=float)
    if not fam.is_classical:
        from loggas.OrthoPoly.exceptional import solve_exceptional

        return _as_output(solve_exceptional(fam.g, fam.degree)(xa), x)
    _warn_outside(fam, xa)
    return _as_output(_classical_values(fam, xa, fam.degree), x)


def coefficients(fam: PolynomialFamily) -> np.ndarray:
    """Power-basis coefficients ``c_0 .. c_n`` (ascending) of a classical polynomial."""
    if not fam.is_classical:
        from loggas.OrthoPoly.exceptional import solve_exceptional

        return np.array(solve_exceptional(fam.g, fam.degree).coefficients)
    n, a, b = fam.degree, fam.a, fam.b
    p_prev = np.array([1.0])
    if n == 0:
        return p_prev
    if fam.kind is FamilyKind.HERMITE:
        p = np.array([0.0, 2.0])
        for k in range(1, n):
            p_prev, p = p, P.polysub(P.polymulx(2.0 * p), 2.0 * k * p_prev)
        return p
    if fam.kind is FamilyKind.LAGUERRE:
        p = np.array([1.0 + a, -1.0])
        for k in range(1, n):
            nxt = P.polysub(P.polysub((2 * k + 1 + a) * p, P.polymulx(p)), (k + a) * p_prev)
            p_prev, p = p, nxt / (k + 1)
        return p
    p = np.array([(a + 1.0) - (a + b + 2.0) / 2.0, (a + b + 2.0) / 2.0])
    for k in range(1, n):
        s = 2 * k + a + b
        c1 = 2.0 * (k + 1) * (k + a + b + 1) * s
        lin = P.polyadd((s + 1) * (a * a - b * b) * p, (s + 1) * (s + 2) * s * P.polymulx(p))
        nxt = P.polysub(lin, 2.0 * (k + a) * (k + b) * (s + 2) * p_prev)
        p_prev, p = p, nxt / c1
    return p


def recurrence_coefficients(fam: PolynomialFamily, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Monic recurrence ``p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}``.

    Returns:
        ``(alpha, beta)`` of length *n*; ``beta[0]`` is the total mass of
        the weight, so ``sqrt(beta[1:])`` is the Jacobi off-diagonal.
    """
    k = np.arange(n, dtype=float)
    a, b = fam.a, fam.b
    if fam.kind is FamilyKind.HERMITE:
        alpha = np.zeros(n)
        beta = k / 2.0
        mass = np.sqrt(np.pi)
    elif fam.kind is FamilyKind.LAGUERRE:
        alpha = 2.0 * k + a + 1.0
        beta = k * (k + a)
        mass = np.exp(gammaln(a + 1.0))
    elif fam.kind is FamilyKind.JACOBI:
        s = 2.0 * k + a + b
        alpha = np.empty(n)
        beta = np.empty(n)
        alpha[0] = (b - a) / (a + b + 2.0)
        alpha[1:] = (b * b - a * a) / (s[1:] * (s[1:] + 2.0))
        if n > 1:
            beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + a + b) ** 2 * (3.0 + a + b))
        kk, ss = k[2:], s[2:]
        beta[2:] = (
            4.0 * kk * (kk + a) * (kk + b) * (kk + a + b)
            / (ss * ss * (ss + 1.0) * (ss - 1.0))
        )
        mass = np.exp(
            (a + b + 1.0) * np.log(2.0)
            + gammaln(a + 1.0)
            + gammaln(b + 1.0)
            - gammaln(a + b + 2.0)
        )
    else:
        raise ParameterDomainError("recurrence coefficients exist only for classical families")
    beta = np.array(beta, dtype=float)
    if n:
        beta[0] = mass
    return np.asarray(alpha, dtype=float), beta


def _degree(fam: PolynomialFamily, n: Optional[int]) -> int:
    n = fam.degree if n is None else int(n)
    if n < 1:
        raise ParameterDomainError(f"roots need degree >= 1, got {n}")
    return n


def roots(fam: PolynomialFamily, n: Optional[int] = None) -> np.ndarray:
    """
    Sorted zeros of the degree-*n* member (``fam.degree`` if omitted).

    Classical zeros are the eigenvalues of the Jacobi matrix. Exceptional
    families are routed to
    :func:`~loggas.OrthoPoly.exceptional.exceptional_roots`.

    Raises:
        ParameterDomainError: If ``n < 1``.
    """
    n = _degree(fam, n)
    if not fam.is_classical:
        from loggas.OrthoPoly.exceptional import exceptional_roots

        return exceptional_roots(fam.g, n)
    alpha, beta = recurrence_coefficients(fam, n)
    if n == 1:
        return alpha.copy()
    return np.sort(eigh_tridiagonal(alpha, np.sqrt(beta[1:]), eigvals_only=True))


def gauss_quadrature(fam: PolynomialFamily, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss nodes and weights for the family's weight function.

    Exact for polynomials of degree ``2n - 1`` against :func:`weight`.
    """
    n = _degree(fam, n)
    if not fam.is_classical:
        raise ParameterDomainError("Gauss quadrature is defined for classical families only")
    alpha, beta = recurrence_coefficients(fam, n)
    if n == 1:
        return alpha.copy(), np.array([beta[0]])
    nodes, vectors = eigh_tridiagonal(alpha, np.sqrt(beta[1:]))
    order = np.argsort(nodes)
    return nodes[order], beta[0] * vectors[0, order] ** 2


def weight(fam: PolynomialFamily, x) -> Union[float, np.ndarray]:
    """
    Weight function of the family at *x*.

    Jacobi uses ``(1 - x)**a (1 + x)**b``. The exceptional weight is
    ``x**(2(g+l)) exp(-x**2) / L_l^(2(g+l)-3)(-x**2)``
    with the denominator evaluated as a classical Laguerre value.
    Outside the natural interval the weight is ``0`` and a warning is
    issued.

    Raises:
        ParameterDomainError: If the exceptional denominator vanishes.
    """
    xa = np.asarray(x, dtype=float)
    inside = fam.contains(xa)
    _warn_outside(fam, xa)
    xs = np.where(inside, xa, 0.5 if fam.kind is not FamilyKind.HERMITE else 0.0)
    if fam.kind is FamilyKind.HERMITE:
        w = np.exp(-xs * xs)
    elif fam.kind is FamilyKind.LAGUERRE:
        w = xs**fam.a * np.exp(-xs)
    elif fam.kind is FamilyKind.JACOBI:
        w = (1.0 - xs) ** fam.a * (1.0 + xs) ** fam.b
    else:
        power = 2.0 * (fam.g + fam.l)
        denominator = _classical_values(
            PolynomialFamily.laguerre(power - 3.0), -xs * xs, fam.l
        )
        if np.any(denominator == 0):
            raise ParameterDomainError("exceptional weight denominator vanishes in the domain")
        w = xs**power * np.exp(-xs * xs) / denominator
    return _as_output(np.where(inside, w, 0.0), x)


def export_coefficients_csv(
    families: Iterable[PolynomialFamily], path: Union[str, Path]
) -> Path:
    """Write one row ``degree, c_0, ..., c_n`` per family."""
    rows = []
    width = 0
    for fam in families:
        c = coefficients(fam)
        width = max(width, c.size)
        rows.append([fam.degree, *c])
    header = ["degree"] + [f"c{i}" for i in range(width)]
    padded = [row + [""] * (width + 1 - len(row)) for row in rows]
    return write_csv(path, header, padded)


def export_roots_csv(values: Sequence[float], path: Union[str, Path]) -> Path:
    """Write a root list as ``index, root`` rows."""
    return write_csv(path, ["index", "root"], [[i, r] for i, r in enumerate(values)])

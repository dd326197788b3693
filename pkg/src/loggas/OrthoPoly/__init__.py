"""
OrthoPoly module for loggas.

Orthogonal polynomials whose zeros are log-gas equilibria:

- :class:`PolynomialFamily` -- Hermite, Laguerre(a), Jacobi(a, b) or the
  X1 exceptional Laguerre family, with a degree.
- :func:`evaluate`, :func:`weight`, :func:`roots` and
  :func:`gauss_quadrature` -- recurrences and Golub-Welsch.
- :func:`solve_exceptional` -- X1 polynomials from the cleared deformed ODE.

CSV exporters for coefficient vectors and root lists live alongside.
"""

from loggas.OrthoPoly.base import (
    FamilyKind,
    PolynomialFamily,
    coefficients,
    evaluate,
    export_coefficients_csv,
    export_roots_csv,
    gauss_quadrature,
    recurrence_coefficients,
    roots,
    weight,
)
from loggas.OrthoPoly.exceptional import (
    EnvelopeSquareRelation,
    ExceptionalSolution,
    envelope_square_relation,
    exceptional_roots,
    orthogonality,
    solve_exceptional,
    wavefunction,
)

__all__ = [
    "FamilyKind",
    "PolynomialFamily",
    "coefficients",
    "evaluate",
    "weight",
    "roots",
    "gauss_quadrature",
    "recurrence_coefficients",
    "export_coefficients_csv",
    "export_roots_csv",
    "ExceptionalSolution",
    "EnvelopeSquareRelation",
    "solve_exceptional",
    "exceptional_roots",
    "wavefunction",
    "orthogonality",
    "envelope_square_relation",
]

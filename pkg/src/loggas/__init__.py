"""
loggas -- Log-gas electrostatics, quantum Hamilton-Jacobi quantization and
random-matrix ensembles, cross-validated against each other.

The Stieltjes log-gas, the QHJ bound-state method and SUSY quantum
mechanics describe the same objects: equilibrium charges sit at zeros of
orthogonal polynomials, those zeros are the moving poles of the quantum
momentum function, and the Dyson gas relaxes to the joint eigenvalue
density whose square root is a ground-state wave function.

Submodules:
    Potentials: Catalog of superpotentials, SUSY partners and variable maps.
    OrthoPoly: Classical and X1 exceptional orthogonal polynomials.
    Electrostatics: Log-gas energy and Newton equilibria.
    QHJ: Riccati momentum function, polynomial quantization, contours.
    Ensembles: Gaussian-ensemble sampling, joint densities, statistics.
    Dyson: Dyson gas Langevin dynamics and complex pole flows.
    Checks: The cross-validation suite.

Quick-start example::

    from loggas.Electrostatics.base import classical_roots, equilibrium
    from loggas.Potentials.base import make_potential

    coulomb = make_potential("coulomb", l=0)
    cfg = equilibrium(5, coulomb)
    abs(cfg.positions - classical_roots(coulomb, 5)).max()   # < 1e-8

See Also:
    :mod:`loggas.cli` for the command-line front end.
"""

__version__ = "0.0.0"

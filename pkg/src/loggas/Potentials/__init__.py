"""
Potentials module for loggas.

Catalog of confining models and the structures built on them:

- :class:`PotentialSpec` and :func:`make_potential` -- closed-form
  evaluators for ``V``, ``V'`` and the superpotential ``W``.
- :func:`partner_potentials` -- SUSY partners ``V± = W**2 ± W' + E``.
- :class:`VariableMap` and :func:`variable_map` -- changes of variable to
  Coulomb form.
- :func:`shape_invariant_spectrum` -- spectra from the SUSY hierarchy.
"""

from loggas.Potentials.base import (
    PotentialName,
    PotentialSpec,
    Superpotential,
    load_potential,
    make_potential,
    partner_potentials,
    save_potential,
)
from loggas.Potentials.susy import (
    fokker_planck_ground_state,
    fokker_planck_potential,
    shape_invariance_residual,
    shape_invariant_spectrum,
)
from loggas.Potentials.variable_maps import VariableMap, variable_map

__all__ = [
    "PotentialName",
    "PotentialSpec",
    "Superpotential",
    "make_potential",
    "partner_potentials",
    "save_potential",
    "load_potential",
    "VariableMap",
    "variable_map",
    "shape_invariant_spectrum",
    "shape_invariance_residual",
    "fokker_planck_potential",
    "fokker_planck_ground_state",
]

"""
Supersymmetric hierarchy of the catalog potentials.

A shape-invariant family satisfies ``V+(x; a) = V-(x; a1) + R(a)`` where
``a1`` is a shifted parameter set. Iterating the shift yields the whole
spectrum algebraically:

    E_n = E0(a) + R(a) + R(a1) + ... + R(a_{n-1})

The harmonic, Coulomb, radial-oscillator, Morse and Scarf entries are
shape invariant; the rationally deformed oscillator is not.

The module also builds the Schrödinger form of the one-body Fokker-Planck
operator, whose ground state is the stationary density of the gas.
"""

from typing import Callable, Dict, List, Mapping, Tuple

import numpy as np

from loggas.exceptions import ParameterDomainError, UnsupportedPotentialError
from loggas.Potentials.base import (
    Evaluator,
    PotentialName,
    PotentialSpec,
    make_potential,
    partner_potentials,
)

ShiftRule = Tuple[
    Callable[[Mapping[str, float]], Dict[str, float]],
    Callable[[Mapping[str, float]], float],
]


def _coulomb_kappa(p: Mapping[str, float]) -> float:
    return p["Z"] / (2.0 * (p["l"] + 1.0))


_SHIFT_RULES: Dict[PotentialName, ShiftRule] = {
    PotentialName.HARMONIC: (lambda p: dict(p), lambda p: 2.0),
    PotentialName.COULOMB: (
        lambda p: {"l": p["l"] + 1.0, "Z": p["Z"]},
        lambda p: _coulomb_kappa(p) ** 2 - (p["Z"] / (2.0 * (p["l"] + 2.0))) ** 2,
    ),
    PotentialName.OSCILLATOR_3D: (lambda p: {"l": p["l"] + 1.0}, lambda p: 2.0),
    PotentialName.MORSE: (
        lambda p: {"A": p["A"] - p["alpha"], "B": p["B"], "alpha": p["alpha"]},
        lambda p: p["A"] ** 2 - (p["A"] - p["alpha"]) ** 2,
    ),
    PotentialName.SCARF: (
        lambda p: {"A": p["A"] + p["alpha"], "B": p["B"], "alpha": p["alpha"]},
        lambda p: (p["A"] + p["alpha"]) ** 2 - p["A"] ** 2,
    ),
}


def _rule(spec: PotentialSpec) -> ShiftRule:
    if spec.name not in _SHIFT_RULES:
        raise UnsupportedPotentialError(
            f"{spec.name.value} has no shape-invariance rule"
        )
    return _SHIFT_RULES[spec.name]


def shifted_partner(spec: PotentialSpec) -> Tuple[PotentialSpec, float]:
    """Return the shifted partner ``a1`` and the remainder ``R(a)``."""
    shift, remainder = _rule(spec)
    return make_potential(spec.name, shift(spec.params)), float(remainder(spec.params))


def shape_invariance_residual(spec: PotentialSpec, grid=None) -> float:
    """Max of ``|V+(a) - V-(a1) - R(a)|`` over the probe grid."""
    partner, remainder = shifted_partner(spec)
    x = spec.probe_grid() if grid is None else np.asarray(grid, dtype=float)
    v_plus, _ = partner_potentials(spec, energy=0.0)
    _, v_minus_shifted = partner_potentials(partner, energy=0.0)
    return float(np.max(np.abs(v_plus(x) - v_minus_shifted(x) - remainder)))


def shape_invariant_spectrum(spec: PotentialSpec, n_max: int) -> List[float]:
    """
    Energies ``E_0 .. E_{n_max}`` from the SUSY hierarchy.

    For Morse the list stops at the last bound level (``A - n alpha > 0``).

    Args:
        spec: A shape-invariant catalog entry.
        n_max: Highest level index requested.

    Returns:
        Energies in increasing order.

    Raises:
        ParameterDomainError: If ``n_max < 0``.
        UnsupportedPotentialError: For entries without a shift rule.

    Example::

        shape_invariant_spectrum(make_potential("harmonic"), 3)
        # [1.0, 3.0, 5.0, 7.0]
    """
    if n_max < 0:
        raise ParameterDomainError(f"n_max must be >= 0, got {n_max}")
    shift, remainder = _rule(spec)
    params = dict(spec.params)
    energies = [spec.E0]
    for _ in range(n_max):
        if spec.name is PotentialName.MORSE and params["A"] - params["alpha"] <= 0:
            break
        energies.append(energies[-1] + float(remainder(params)))
        params = shift(params)
    return energies


def fokker_planck_potential(spec: PotentialSpec, beta: float) -> Evaluator:
    """
    Schrödinger potential of the one-body Fokker-Planck operator.

    With drift ``U = -W`` and diffusion ``1/beta``, the substitution
    ``P = exp(-beta ∫W / 2) psi`` turns ``(1/beta) P'' - (U P)'`` into
    ``(1/beta) psi'' - V_s psi`` with

        V_s = (beta / 4) W**2 - W' / 2

    whose zero-energy ground state is ``exp(-beta ∫W / 2)``. At ``beta = 2``
    this is ``(V - E0) / 2``, the SUSY form.

    Raises:
        ParameterDomainError: If ``beta <= 0``.
    """
    if beta <= 0:
        raise ParameterDomainError(f"beta must be positive, got {beta}")
    sp = spec.superpotential

    def v_s(x):
        w = sp.W(x)
        return 0.25 * beta * w * w - 0.5 * sp.dW(x)

    return v_s


def fokker_planck_ground_state(spec: PotentialSpec, beta: float) -> Evaluator:
    """Unnormalized zero mode ``exp(-beta ∫W / 2)`` of :func:`fokker_planck_potential`."""
    sp = spec.superpotential
    return lambda x: np.exp(-0.5 * beta * sp.integral(x))

"""
Changes of variable that bring catalog models to Coulomb form.

A :class:`VariableMap` pairs a source model at energy ``E_s`` with a
Coulomb target at energy ``E_t`` such that the shifted potentials obey

    V_t(r) - E_t = m(r) * (V_s(x(r)) - E_s)

on the whole target domain. Available maps:

======================  =====================  ==================
map                     forward ``x -> r``     multiplier ``m(r)``
======================  =====================  ==================
``Oscillator3D->Coulomb``  ``r = x**2``        ``1 / r``
``Morse->Coulomb``      ``r = exp(-alpha x)``  ``1 / r**2``
``Scarf->Coulomb``      ``sin(alpha x) = 1/r`` ``(r**2 - 1) / r**2``
======================  =====================  ==================

Target parameters are read off the expanded product: the ``1/r**2``
coefficient fixes ``l(l+1)``, the ``1/r`` coefficient fixes ``Z`` and the
constant fixes ``E_t``. In the oscillator case the source energy becomes
the Coulomb coupling, ``Z = E_s``.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple

import numpy as np

from loggas.exceptions import ParameterDomainError, UnknownMapError
from loggas.Potentials.base import PotentialSpec, make_potential
from loggas.utils import probe_grid

Map = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class VariableMap:
    """A change of variable between a source model and a Coulomb target.

    Attributes:
        name: Map name, e.g. ``"Morse->Coulomb"``.
        source: Source :class:`PotentialSpec`.
        target: Coulomb :class:`PotentialSpec`.
        source_energy: Energy ``E_s`` subtracted from the source potential.
        target_energy: Energy ``E_t`` subtracted from the target potential.
        forward: ``x -> r``.
        inverse: ``r -> x``.
        multiplier: ``m(r)``.
        target_window: Finite sub-interval of the target domain used for
            probe grids.
    """

    name: str
    source: PotentialSpec
    target: PotentialSpec
    source_energy: float
    target_energy: float
    forward: Map = field(repr=False, compare=False)
    inverse: Map = field(repr=False, compare=False)
    multiplier: Map = field(repr=False, compare=False)
    target_window: Tuple[float, float] = (0.1, 20.0)

    def source_effective(self, x):
        """``V_s(x) - E_s``."""
        return self.source.V(x) - self.source_energy

    def target_effective(self, r):
        """``V_t(r) - E_t``."""
        return self.target.V(r) - self.target_energy

    def probe_grid(self, n: int = 64) -> np.ndarray:
        """*n* interior points of the target window."""
        return probe_grid(*self.target_window, n=n)

    def identity_residual(self, grid: Optional[np.ndarray] = None) -> float:
        """Max over *grid* of ``|V_t - E_t - m (V_s(x(r)) - E_s)|``."""
        r = self.probe_grid() if grid is None else np.asarray(grid, dtype=float)
        lhs = self.target_effective(r)
        rhs = self.multiplier(r) * self.source_effective(self.inverse(r))
        return float(np.max(np.abs(lhs - rhs)))

    def is_monotone(self, grid: Optional[np.ndarray] = None) -> bool:
        """Check that ``forward`` is strictly monotone on source points.

        The source points are the preimages of the target probe grid,
        sorted ascending.
        """
        r = self.probe_grid() if grid is None else np.asarray(grid, dtype=float)
        x = np.sort(self.inverse(r))
        d = np.diff(self.forward(x))
        return bool(np.all(d > 0) or np.all(d < 0))


def _l_from_product(value: float, what: str) -> float:
    if value < 0:
        raise ParameterDomainError(
            f"{what}: centrifugal coefficient l(l+1) = {value} is negative"
        )
    return 0.5 * (np.sqrt(1.0 + 4.0 * value) - 1.0)


def _oscillator_map(params: Dict[str, float]) -> VariableMap:
    l = params.get("l", 0.0)
    source = make_potential("Oscillator3D", l=l)
    E = params.get("E", source.E0)
    if E <= 0:
        raise ParameterDomainError(f"Oscillator3D->Coulomb requires E > 0, got E={E}")
    target = make_potential("Coulomb", l=l, Z=E)
    return VariableMap(
        name="Oscillator3D->Coulomb",
        source=source,
        target=target,
        source_energy=E,
        target_energy=-0.25,
        forward=lambda x: np.asarray(x) ** 2,
        inverse=lambda r: np.sqrt(r),
        multiplier=lambda r: 1.0 / np.asarray(r),
        target_window=(0.1, 25.0),
    )


def _morse_map(params: Dict[str, float]) -> VariableMap:
    source = make_potential(
        "Morse",
        A=params.get("A", 2.0),
        B=params.get("B", 1.0),
        alpha=params.get("alpha", 1.0),
    )
    A, B, alpha = source.params["A"], source.params["B"], source.params["alpha"]
    E = params.get("E", 0.0)
    Z = B * (2.0 * A + alpha)
    if Z <= 0:
        raise ParameterDomainError(
            f"Morse->Coulomb needs B(2A + alpha) > 0 for an attractive target, got {Z}"
        )
    l = _l_from_product(A * A - E, "Morse->Coulomb")
    target = make_potential("Coulomb", l=l, Z=Z)
    return VariableMap(
        name="Morse->Coulomb",
        source=source,
        target=target,
        source_energy=E,
        target_energy=-B * B,
        forward=lambda x: np.exp(-alpha * np.asarray(x)),
        inverse=lambda r: -np.log(r) / alpha,
        multiplier=lambda r: 1.0 / np.asarray(r) ** 2,
        target_window=(0.05, 10.0),
    )


def _scarf_map(params: Dict[str, float]) -> VariableMap:
    source = make_potential(
        "Scarf",
        A=params.get("A", 2.0),
        B=params.get("B", 1.0),
        alpha=params.get("alpha", 1.0),
    )
    A, B, alpha = source.params["A"], source.params["B"], source.params["alpha"]
    E = params.get("E", 0.0)
    Z = B * (2.0 * A - alpha)
    if Z <= 0:
        raise ParameterDomainError(
            f"Scarf->Coulomb needs B(2A - alpha) > 0 for an attractive target, got {Z}"
        )
    l = _l_from_product(A * A + E, "Scarf->Coulomb")
    target = make_potential("Coulomb", l=l, Z=Z)
    return VariableMap(
        name="Scarf->Coulomb",
        source=source,
        target=target,
        source_energy=E,
        target_energy=-(B * B - A * alpha - E),
        forward=lambda x: 1.0 / np.sin(alpha * np.asarray(x)),
        inverse=lambda r: np.arcsin(1.0 / np.asarray(r)) / alpha,
        multiplier=lambda r: (np.asarray(r) ** 2 - 1.0) / np.asarray(r) ** 2,
        target_window=(1.05, 20.0),
    )


_MAPS = {
    "oscillator3d->coulomb": _oscillator_map,
    "oscillator3d": _oscillator_map,
    "oscillator": _oscillator_map,
    "morse->coulomb": _morse_map,
    "morse": _morse_map,
    "scarf->coulomb": _scarf_map,
    "scarf": _scarf_map,
}


def variable_map(name: str, params: Optional[Mapping[str, float]] = None) -> VariableMap:
    """
    Build one of the catalog changes of variable.

    Args:
        name: ``"Oscillator3D->Coulomb"``, ``"Morse->Coulomb"`` or
            ``"Scarf->Coulomb"`` (the source name alone is accepted too).
        params: Source parameters plus the source energy ``E``. Defaults:
            ``l=0, E=3/2`` for the oscillator, ``A=2, B=1, alpha=1, E=0``
            otherwise.

    Returns:
        A :class:`VariableMap` whose multiplier identity holds to
        round-off on its probe grid.

    Raises:
        UnknownMapError: If *name* is not a catalog map.
        ParameterDomainError: If the parameters give no valid target.

    Example::

        vm = variable_map("Oscillator3D->Coulomb")
        vm.forward(2.0)                                  # 4.0
        vm.target_effective(4.0) - vm.source_effective(2.0) / 4.0   # ~0
    """
    key = name.replace(" ", "").lower()
    if key not in _MAPS:
        raise UnknownMapError(
            f"unknown variable map '{name}'; expected Oscillator3D->Coulomb, "
            "Morse->Coulomb or Scarf->Coulomb"
        )
    values = {k: float(v) for k, v in dict(params or {}).items()}
    return _MAPS[key](values)

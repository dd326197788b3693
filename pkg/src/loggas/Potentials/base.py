"""
Catalog of confining potentials and their superpotentials.

Every catalog entry is a :class:`PotentialSpec`: closed-form evaluators for
``V``, ``V'`` and the superpotential ``W`` (with ``W'``, ``W''`` and the
antiderivative ``∫W``), the open domain, and the stored factorization
energy ``E0`` such that

    V(x) - E0 = W(x)**2 - W'(x)

holds pointwise. Units are fixed as ``hbar = 1`` and ``2m = 1`` throughout,
so the Riccati equation reads ``p**2 - i p' = E - V``.

The same superpotential also drives the log-gas: a charge at ``x`` feels
the external field ``W(x)``, i.e. the confinement ``∫W``. For the harmonic
oscillator that is ``x**2 / 2``, whose equilibria sit at Hermite zeros.

Example::

    from loggas.Potentials.base import make_potential, partner_potentials

    coulomb = make_potential("Coulomb", {"l": 0})
    coulomb.W(2.0)                 # 1/2 - 1/2 = 0.0
    v_plus, v_minus = partner_potentials(coulomb)
    coulomb.partner_residual()     # < 1e-10
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from loggas.exceptions import ParameterDomainError
from loggas.utils import probe_grid, write_json

Evaluator = Callable[[np.ndarray], np.ndarray]


class PotentialName(str, Enum):
    """Names of the catalog entries."""

    HARMONIC = "HarmonicOscillator"
    COULOMB = "Coulomb"
    OSCILLATOR_3D = "Oscillator3D"
    MORSE = "Morse"
    SCARF = "Scarf"
    DEFORMED = "DeformedOscillator"


_ALIASES = {
    "harmonic": PotentialName.HARMONIC,
    "harmonicoscillator": PotentialName.HARMONIC,
    "oscillator": PotentialName.HARMONIC,
    "coulomb": PotentialName.COULOMB,
    "oscillator3d": PotentialName.OSCILLATOR_3D,
    "radial": PotentialName.OSCILLATOR_3D,
    "morse": PotentialName.MORSE,
    "scarf": PotentialName.SCARF,
    "deformed": PotentialName.DEFORMED,
    "deformedoscillator": PotentialName.DEFORMED,
}


def resolve_name(name: Union[str, PotentialName]) -> PotentialName:
    """Map a catalog name or CLI alias onto :class:`PotentialName`.

    Raises:
        ParameterDomainError: If *name* is not in the catalog.
    """
    if isinstance(name, PotentialName):
        return name
    key = str(name).replace("_", "").replace("-", "").replace(" ", "").lower()
    if key in _ALIASES:
        return _ALIASES[key]
    raise ParameterDomainError(
        f"unknown potential '{name}'; expected one of "
        f"{[p.value for p in PotentialName]}"
    )


def _const(value: float) -> Evaluator:
    def evaluate(x):
        x = np.asarray(x)
        return np.zeros_like(x) + value

    return evaluate


@dataclass(frozen=True)
class Superpotential:
    """Superpotential ``W`` with its derivatives and antiderivative.

    Evaluators accept real or complex arrays; complex arguments are needed
    for contour integrals of the momentum function.

    Attributes:
        W: ``W(x)``.
        dW: ``W'(x)``.
        d2W: ``W''(x)``.
        integral: An antiderivative of ``W``; ``exp(-integral)`` is the
            envelope of the wave function.
        singularities: Poles of ``W`` in the complex plane (fixed poles of
            the momentum function).
    """

    W: Evaluator
    dW: Evaluator
    d2W: Evaluator
    integral: Evaluator
    singularities: Tuple[complex, ...] = ()

    def Q(self, x):
        """Fixed part of the momentum function, ``Q = i W``."""
        return 1j * self.W(x)

    def potential_derivative(self, x):
        """``V'`` implied by ``V = W**2 - W' + const``."""
        return 2.0 * self.W(x) * self.dW(x) - self.d2W(x)

    @classmethod
    def constant(cls, value: float = 0.0) -> "Superpotential":
        """Superpotential ``W ≡ value``."""
        return cls(
            W=_const(value),
            dW=_const(0.0),
            d2W=_const(0.0),
            integral=lambda x: value * np.asarray(x),
        )

    @classmethod
    def coulomb(cls, l: float, kappa: float) -> "Superpotential":
        """``W = kappa - (l + 1) / r``, the envelope ``r**(l+1) exp(-kappa r)``."""
        c = l + 1.0
        return cls(
            W=lambda r: kappa - c / np.asarray(r),
            dW=lambda r: c / np.asarray(r) ** 2,
            d2W=lambda r: -2.0 * c / np.asarray(r) ** 3,
            integral=lambda r: kappa * np.asarray(r) - c * np.log(r),
            singularities=(0.0,),
        )


@dataclass(frozen=True)
class PotentialSpec:
    """A named confining model with closed-form evaluators.

    Instances are immutable and safe to share between workers. Build them
    with :func:`make_potential` rather than directly.

    Attributes:
        name: Catalog name.
        params: Real parameters (``l``, ``Z``, ``A``, ``B``, ``alpha``, ``g``).
        domain: Open interval ``(lo, hi)`` of the coordinate.
        E0: Factorization energy, ``V - E0 = W**2 - W'``.
        V: Potential evaluator.
        dV: Derivative of the potential.
        superpotential: The :class:`Superpotential` factorizing ``V``.
        probe_window: Finite sub-interval used for probe grids.
    """

    name: PotentialName
    params: Mapping[str, float]
    domain: Tuple[float, float]
    E0: float
    V: Evaluator = field(repr=False, compare=False)
    dV: Evaluator = field(repr=False, compare=False)
    superpotential: Superpotential = field(repr=False, compare=False)
    probe_window: Tuple[float, float] = field(default=(-5.0, 5.0), compare=False)

    @property
    def W(self) -> Evaluator:
        return self.superpotential.W

    @property
    def dW(self) -> Evaluator:
        return self.superpotential.dW

    def confinement(self, x):
        """Log-gas external potential, the antiderivative of ``W``."""
        return self.superpotential.integral(x)

    def contains(self, x) -> np.ndarray:
        """Elementwise test for membership in the open domain."""
        x = np.asarray(x, dtype=float)
        lo, hi = self.domain
        return (x > lo) & (x < hi)

    def probe_grid(self, n: int = 64) -> np.ndarray:
        """*n* interior points of :attr:`probe_window`."""
        return probe_grid(*self.probe_window, n=n)

    def partner_residual(self, grid: Optional[np.ndarray] = None) -> float:
        """Max of ``|V - (W**2 - W' + E0)|`` over *grid*."""
        x = self.probe_grid() if grid is None else np.asarray(grid, dtype=float)
        w = self.W(x)
        return float(np.max(np.abs(self.V(x) - (w * w - self.dW(x) + self.E0))))

    def to_dict(self) -> Dict:
        """JSON-ready ``{name, params, domain, E0}``."""
        return {
            "name": self.name.value,
            "params": dict(self.params),
            "domain": [self.domain[0], self.domain[1]],
            "E0": self.E0,
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "PotentialSpec":
        """Rebuild a catalog entry from :meth:`to_dict` output.

        Raises:
            ParameterDomainError: If the stored domain or ``E0`` disagree
                with the catalog for the stored parameters.
        """
        if "name" not in data:
            raise ParameterDomainError("potential document has no 'name'")
        spec = make_potential(data["name"], dict(data.get("params", {})))
        if "E0" in data and not np.isclose(float(data["E0"]), spec.E0, rtol=1e-12, atol=1e-12):
            raise ParameterDomainError(
                f"stored E0={data['E0']} disagrees with catalog value {spec.E0}"
            )
        if "domain" in data:
            lo, hi = (float(v) for v in data["domain"])
            if (lo, hi) != spec.domain:
                raise ParameterDomainError(
                    f"stored domain {(lo, hi)} disagrees with catalog domain {spec.domain}"
                )
        return spec


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise ParameterDomainError(message)


def _harmonic(params: Dict[str, float]) -> PotentialSpec:
    return PotentialSpec(
        name=PotentialName.HARMONIC,
        params={},
        domain=(-np.inf, np.inf),
        E0=1.0,
        V=lambda x: np.asarray(x) ** 2,
        dV=lambda x: 2.0 * np.asarray(x),
        superpotential=Superpotential(
            W=lambda x: np.asarray(x) * 1.0,
            dW=_const(1.0),
            d2W=_const(0.0),
            integral=lambda x: 0.5 * np.asarray(x) ** 2,
        ),
        probe_window=(-5.0, 5.0),
    )


def _coulomb(params: Dict[str, float]) -> PotentialSpec:
    l = float(params.get("l", 0.0))
    Z = float(params.get("Z", 1.0))
    _check(l >= 0, f"Coulomb requires l >= 0, got l={l}")
    _check(Z > 0, f"Coulomb requires Z > 0, got Z={Z}")
    ll = l * (l + 1.0)
    kappa = Z / (2.0 * (l + 1.0))
    return PotentialSpec(
        name=PotentialName.COULOMB,
        params={"l": l, "Z": Z},
        domain=(0.0, np.inf),
        E0=-kappa * kappa,
        V=lambda r: ll / np.asarray(r) ** 2 - Z / np.asarray(r),
        dV=lambda r: -2.0 * ll / np.asarray(r) ** 3 + Z / np.asarray(r) ** 2,
        superpotential=Superpotential.coulomb(l, kappa),
        probe_window=(0.1, 30.0 / (2.0 * kappa)),
    )


def _oscillator_3d(params: Dict[str, float]) -> PotentialSpec:
    l = float(params.get("l", 0.0))
    _check(l >= 0, f"Oscillator3D requires l >= 0, got l={l}")
    ll = l * (l + 1.0)
    c = l + 1.0
    return PotentialSpec(
        name=PotentialName.OSCILLATOR_3D,
        params={"l": l},
        domain=(0.0, np.inf),
        E0=l + 1.5,
        V=lambda x: ll / np.asarray(x) ** 2 + np.asarray(x) ** 2 / 4.0,
        dV=lambda x: -2.0 * ll / np.asarray(x) ** 3 + np.asarray(x) / 2.0,
        superpotential=Superpotential(
            W=lambda x: np.asarray(x) / 2.0 - c / np.asarray(x),
            dW=lambda x: 0.5 + c / np.asarray(x) ** 2,
            d2W=lambda x: -2.0 * c / np.asarray(x) ** 3,
            integral=lambda x: np.asarray(x) ** 2 / 4.0 - c * np.log(x),
            singularities=(0.0,),
        ),
        probe_window=(0.1, 10.0),
    )


def _morse(params: Dict[str, float]) -> PotentialSpec:
    A = float(params.get("A", 2.0))
    B = float(params.get("B", 1.0))
    alpha = float(params.get("alpha", 1.0))
    _check(alpha > 0, f"Morse requires alpha > 0, got alpha={alpha}")
    _check(np.isfinite(A) and np.isfinite(B), "Morse requires finite real A and B")
    shift = B * (2.0 * A + alpha)

    def y(x):
        return np.exp(-alpha * np.asarray(x))

    center = np.log(abs(B) / A) / alpha if A > 0 and B != 0 else 0.0
    return PotentialSpec(
        name=PotentialName.MORSE,
        params={"A": A, "B": B, "alpha": alpha},
        domain=(-np.inf, np.inf),
        E0=0.0,
        V=lambda x: A * A + B * B * y(x) ** 2 - shift * y(x),
        dV=lambda x: -2.0 * alpha * B * B * y(x) ** 2 + alpha * shift * y(x),
        superpotential=Superpotential(
            W=lambda x: A - B * y(x),
            dW=lambda x: alpha * B * y(x),
            d2W=lambda x: -alpha * alpha * B * y(x),
            integral=lambda x: A * np.asarray(x) + (B / alpha) * y(x),
        ),
        probe_window=(center - 2.0 / alpha, center + 8.0 / alpha),
    )


def _scarf(params: Dict[str, float]) -> PotentialSpec:
    A = float(params.get("A", 2.0))
    B = float(params.get("B", 1.0))
    alpha = float(params.get("alpha", 1.0))
    _check(alpha > 0, f"Scarf requires alpha > 0, got alpha={alpha}")
    _check(np.isfinite(A) and np.isfinite(B), "Scarf requires finite real A and B")
    C = A * A + B * B - A * alpha
    D = B * (2.0 * A - alpha)
    edge = np.pi / (2.0 * alpha)

    def sec(x):
        return 1.0 / np.cos(alpha * np.asarray(x))

    def tan(x):
        return np.tan(alpha * np.asarray(x))

    return PotentialSpec(
        name=PotentialName.SCARF,
        params={"A": A, "B": B, "alpha": alpha},
        # single branch: sin(alpha x) in (0, 1), so sin(alpha x) = 1/r is invertible
        domain=(0.0, edge),
        E0=0.0,
        V=lambda x: -A * A + C * sec(x) ** 2 - D * tan(x) * sec(x),
        dV=lambda x: alpha
        * (2.0 * C * sec(x) ** 2 * tan(x) - D * (sec(x) * tan(x) ** 2 + sec(x) ** 3)),
        superpotential=Superpotential(
            W=lambda x: A * tan(x) - B * sec(x),
            dW=lambda x: alpha * (A * sec(x) ** 2 - B * sec(x) * tan(x)),
            d2W=lambda x: alpha
            * alpha
            * (2.0 * A * sec(x) ** 2 * tan(x) - B * (sec(x) * tan(x) ** 2 + sec(x) ** 3)),
            integral=lambda x: -(A / alpha) * np.log(np.cos(alpha * np.asarray(x)))
            - (B / alpha) * np.log(sec(x) + tan(x)),
            singularities=(edge, -edge),
        ),
        probe_window=(0.05 * edge, 0.9 * edge),
    )


def _deformed(params: Dict[str, float]) -> PotentialSpec:
    g = float(params.get("g", 1.0))
    _check(g > 0, f"DeformedOscillator requires g > 0, got g={g}")
    k = g + 0.5
    c = g + 1.0
    gg = g * (g + 1.0)

    def W(x):
        x = np.asarray(x)
        u = x * x
        return x - c / x + 2.0 * x / (u + k) - 2.0 * x / (u + k + 1.0)

    def dW(x):
        x = np.asarray(x)
        u = x * x
        return (
            1.0
            + c / u
            + 2.0 * (k - u) / (u + k) ** 2
            - 2.0 * (k + 1.0 - u) / (u + k + 1.0) ** 2
        )

    def d2W(x):
        x = np.asarray(x)
        u = x * x
        return (
            -2.0 * c / (u * x)
            + 4.0 * x * (u - 3.0 * k) / (u + k) ** 3
            - 4.0 * x * (u - 3.0 * (k + 1.0)) / (u + k + 1.0) ** 3
        )

    def integral(x):
        x = np.asarray(x)
        u = x * x
        return u / 2.0 - c * np.log(x) + np.log(u + k) - np.log(u + k + 1.0)

    def V(x):
        x = np.asarray(x)
        u = x * x
        return u + gg / u + 4.0 * (u - k) / (u + k) ** 2

    def dV(x):
        x = np.asarray(x)
        u = x * x
        return 2.0 * x - 2.0 * gg / (u * x) + 8.0 * x * (3.0 * k - u) / (u + k) ** 3

    rk, rk1 = np.sqrt(k), np.sqrt(k + 1.0)
    return PotentialSpec(
        name=PotentialName.DEFORMED,
        params={"g": g},
        domain=(0.0, np.inf),
        E0=2.0 * g + 3.0,
        V=V,
        dV=dV,
        superpotential=Superpotential(
            W=W,
            dW=dW,
            d2W=d2W,
            integral=integral,
            singularities=(0.0, 1j * rk, -1j * rk, 1j * rk1, -1j * rk1),
        ),
        probe_window=(0.1, 6.0),
    )


_CATALOG: Dict[PotentialName, Callable[[Dict[str, float]], PotentialSpec]] = {
    PotentialName.HARMONIC: _harmonic,
    PotentialName.COULOMB: _coulomb,
    PotentialName.OSCILLATOR_3D: _oscillator_3d,
    PotentialName.MORSE: _morse,
    PotentialName.SCARF: _scarf,
    PotentialName.DEFORMED: _deformed,
}

_ALLOWED_PARAMS = {
    PotentialName.HARMONIC: set(),
    PotentialName.COULOMB: {"l", "Z"},
    PotentialName.OSCILLATOR_3D: {"l"},
    PotentialName.MORSE: {"A", "B", "alpha"},
    PotentialName.SCARF: {"A", "B", "alpha"},
    PotentialName.DEFORMED: {"g"},
}


def make_potential(
    name: Union[str, PotentialName],
    params: Optional[Mapping[str, float]] = None,
    **kwargs: float,
) -> PotentialSpec:
    """
    Build a catalog potential.

    Parameters may be passed as a mapping, as keyword arguments, or both
    (keywords win). Unspecified parameters take catalog defaults:
    ``l=0``, ``Z=1``, ``A=2``, ``B=1``, ``alpha=1``, ``g=1``.

    Args:
        name: Catalog name or alias (``"harmonic"``, ``"coulomb"``, ...).
        params: Parameter mapping.
        **kwargs: Parameters as keywords.

    Returns:
        A :class:`PotentialSpec` satisfying the partner identity.

    Raises:
        ParameterDomainError: On an unknown name, an unknown parameter, or
            a parameter outside its validity range.

    Example::

        make_potential("HarmonicOscillator").W(0.5)   # 0.5
        make_potential("Coulomb", l=-1)               # ParameterDomainError
    """
    pname = resolve_name(name)
    merged = dict(params or {})
    merged.update(kwargs)
    if "α" in merged:
        merged["alpha"] = merged.pop("α")
    unknown = set(merged) - _ALLOWED_PARAMS[pname]
    if unknown:
        raise ParameterDomainError(
            f"{pname.value} does not take parameter(s) {sorted(unknown)}"
        )
    try:
        values = {key: float(value) for key, value in merged.items()}
    except (TypeError, ValueError) as e:
        raise ParameterDomainError(f"parameters must be real numbers: {e}") from e
    return _CATALOG[pname](values)


def partner_potentials(
    spec: Union[PotentialSpec, Superpotential], energy: Optional[float] = None
) -> Tuple[Evaluator, Evaluator]:
    """
    SUSY partner potentials ``V± = W**2 ± W' + E``.

    Args:
        spec: A catalog entry, or a bare :class:`Superpotential`.
        energy: Additive factorization energy; defaults to ``spec.E0``
            (and to ``0`` for a bare superpotential).

    Returns:
        ``(V_plus, V_minus)``; ``V_minus`` coincides with ``spec.V``.
    """
    sp = spec.superpotential if isinstance(spec, PotentialSpec) else spec
    if energy is None:
        energy = spec.E0 if isinstance(spec, PotentialSpec) else 0.0
    E = float(energy)

    def v_plus(x):
        w = sp.W(x)
        return w * w + sp.dW(x) + E

    def v_minus(x):
        w = sp.W(x)
        return w * w - sp.dW(x) + E

    return v_plus, v_minus


def save_potential(spec: PotentialSpec, path: Union[str, Path]) -> Path:
    """Write ``spec`` as a JSON document ``{name, params, domain, E0}``."""
    return write_json(path, spec.to_dict())


def load_potential(source: Union[str, Path, Mapping]) -> PotentialSpec:
    """Load a potential from a mapping, a JSON string, or a JSON file path.

    Raises:
        ParameterDomainError: If the document is malformed.
    """
    if isinstance(source, Mapping):
        return PotentialSpec.from_dict(source)
    text = str(source)
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParameterDomainError(f"invalid potential JSON: {e}") from e
        return PotentialSpec.from_dict(data)
    path = Path(text)
    if path.is_file():
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ParameterDomainError(f"cannot read potential file {path}: {e}") from e
        return PotentialSpec.from_dict(data)
    return make_potential(text)

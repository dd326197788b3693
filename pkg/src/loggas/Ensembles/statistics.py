"""
Spectral statistics for acceptance diagnostics.

Densities are histogrammed after dividing by the semicircle radius
``sqrt(2 dim)``; spacings come from the central half of each spectrum and
are unfolded by their global mean. The two-by-two spacing law is computed
by quadrature from the JPDF ``|x1 - x2|^β exp(-(β/2)(x1² + x2²))``.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import gammainc
from scipy.stats import kstest

from loggas.Ensembles.base import JPDF_BETAS, SpectrumSample
from loggas.exceptions import InsufficientSamplesError, MixedEnsembleError, ParameterDomainError


@dataclass(frozen=True)
class Histogram:
    """Normalized histogram: ``density`` integrates to one over ``edges``."""

    edges: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    density: np.ndarray = field(repr=False)
    normalization: str = "density"

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.edges[1:] + self.edges[:-1])

    def to_dict(self) -> Dict:
        return {
            "bins": self.edges,
            "counts": self.counts,
            "density": self.density,
            "normalization": self.normalization,
        }


@dataclass(frozen=True)
class SpectralStatistics:
    """Density and unfolded spacing histograms of a homogeneous sample set."""

    dim: int
    beta: int
    count: int
    radius: float
    mean_spacing: float
    density: Histogram
    spacing: Histogram

    def to_dict(self) -> Dict:
        return {
            "dim": self.dim,
            "beta": self.beta,
            "count": self.count,
            "radius": self.radius,
            "mean_spacing": self.mean_spacing,
            "density": self.density.to_dict(),
            "spacing": self.spacing.to_dict(),
        }


def _histogram(values: np.ndarray, bins: int) -> Histogram:
    if values.size == 0:
        return Histogram(np.array([0.0, 1.0]), np.array([0]), np.array([0.0]), "empty")
    lo, hi = float(values.min()), float(values.max())
    if hi <= lo:
        edges = np.array([lo - 0.5, lo + 0.5])
        counts = np.array([values.size])
        return Histogram(edges, counts, np.array([1.0]))
    counts, edges = np.histogram(values, bins=bins, range=(lo, hi))
    density = counts / (values.size * np.diff(edges))
    return Histogram(edges, counts, density)


def _bulk(values: np.ndarray, fraction: float) -> np.ndarray:
    n = values.size
    if n <= 4:
        return values
    drop = int(np.floor(0.5 * (1.0 - fraction) * n))
    return values[drop : n - drop]


def spectral_statistics(
    samples: Sequence[SpectrumSample], bins: int = 50, bulk: float = 0.5
) -> SpectralStatistics:
    """
    Density and nearest-neighbour spacing histograms.

    Args:
        samples: Spectra of one ensemble; 100 or more give usable histograms.
        bins: Number of bins per histogram.
        bulk: Central fraction of each spectrum used for spacings.

    Raises:
        InsufficientSamplesError: On an empty list.
        MixedEnsembleError: If dimensions or Dyson indices differ.
    """
    if not samples:
        raise InsufficientSamplesError("no samples given")
    dims = {s.dim for s in samples}
    betas = {s.beta for s in samples}
    if len(dims) > 1 or len(betas) > 1:
        raise MixedEnsembleError(
            f"samples mix dimensions {sorted(dims)} and Dyson indices {sorted(betas)}"
        )
    if not 0 < bulk <= 1:
        raise ParameterDomainError(f"bulk must lie in (0, 1], got {bulk}")
    dim, beta = dims.pop(), betas.pop()
    radius = float(np.sqrt(2.0 * dim))
    values = np.concatenate([np.asarray(s.eigenvalues) for s in samples]) / radius
    gaps = [np.diff(_bulk(np.asarray(s.eigenvalues), bulk)) for s in samples]
    gaps = np.concatenate(gaps) if gaps else np.zeros(0)
    mean = float(gaps.mean()) if gaps.size else float("nan")
    unfolded = gaps / mean if gaps.size else gaps
    return SpectralStatistics(
        dim=dim,
        beta=beta,
        count=len(samples),
        radius=radius,
        mean_spacing=mean,
        density=_histogram(values, bins),
        spacing=_histogram(unfolded, bins),
    )


def semicircle_density(x):
    """Radius-normalized semicircle ``(2/π) sqrt(1 - x²)`` (zero outside ``[-1, 1]``)."""
    x = np.asarray(x, dtype=float)
    return np.where(np.abs(x) < 1.0, (2.0 / np.pi) * np.sqrt(np.clip(1.0 - x * x, 0.0, None)), 0.0)


def semicircle_distance(stats: SpectralStatistics, window: float = 0.8) -> float:
    """Sup-distance between the density histogram and the semicircle on ``[-window, window]``."""
    centers = stats.density.centers
    inside = np.abs(centers) <= window
    if not np.any(inside):
        return float("nan")
    return float(np.max(np.abs(stats.density.density[inside] - semicircle_density(centers[inside]))))


def _check_beta(beta: int) -> None:
    if beta not in JPDF_BETAS:
        raise ParameterDomainError(f"beta must be one of {JPDF_BETAS}, got {beta}")


def _center_integral(beta: int) -> float:
    value, _ = quad(lambda c: np.exp(-beta * c * c), -np.inf, np.inf)
    return value


@lru_cache(maxsize=None)
def _spacing_normalization(beta: int) -> float:
    center = _center_integral(beta)
    total, _ = quad(lambda s: s**beta * np.exp(-beta * s * s / 4.0) * center, 0.0, np.inf)
    return total


def gaussian_spacing_law(s, beta: int = 1):
    """
    Density of the eigenvalue spacing of a two-by-two Gaussian matrix.

    With ``x1 = c - s/2`` and ``x2 = c + s/2`` the JPDF factorizes into
    ``s^β exp(-β s²/4)`` times a Gaussian in ``c``; both integrals are
    done by quadrature.
    """
    _check_beta(beta)
    s = np.asarray(s, dtype=float)
    shape = _center_integral(beta) / _spacing_normalization(beta)
    return np.where(s >= 0, shape * s**beta * np.exp(-beta * s * s / 4.0), 0.0)


def gaussian_spacing_cdf(s, beta: int = 1):
    """Distribution function of :func:`gaussian_spacing_law`, a regularized incomplete gamma in ``β s²/4``."""
    _check_beta(beta)
    s = np.asarray(s, dtype=float)
    return np.where(s > 0, gammainc(0.5 * (beta + 1), 0.25 * beta * s * s), 0.0)


def spacing_law_distance(samples: Sequence[SpectrumSample]) -> float:
    """
    Kolmogorov-Smirnov distance between raw two-by-two spacings and the quadrature law.

    Spacings are not unfolded, so the scale of the law is tested along with its shape.

    Raises:
        InsufficientSamplesError: On an empty list.
        MixedEnsembleError: If a sample is not two by two or Dyson indices differ.
    """
    if not samples:
        raise InsufficientSamplesError("no samples given")
    dims = {s.dim for s in samples}
    betas = {s.beta for s in samples}
    if dims != {2} or len(betas) > 1:
        raise MixedEnsembleError(
            f"need two-by-two samples of one Dyson index, got dimensions {sorted(dims)} "
            f"and indices {sorted(betas)}"
        )
    beta = betas.pop()
    spacings = np.array([s.eigenvalues[1] - s.eigenvalues[0] for s in samples], dtype=float)
    return float(kstest(spacings, lambda s: gaussian_spacing_cdf(s, beta)).statistic)


@lru_cache(maxsize=None)
def gaussian_mean_spacing(beta: int = 1) -> float:
    """Mean of :func:`gaussian_spacing_law`; ``sqrt(π)`` for ``beta = 1``."""
    _check_beta(beta)
    value, _ = quad(lambda s: s * float(gaussian_spacing_law(s, beta)), 0.0, np.inf)
    return value


def wigner_surmise(s, beta: int = 1):
    """Unit-mean two-by-two spacing law in closed form."""
    _check_beta(beta)
    s = np.asarray(s, dtype=float)
    if beta == 1:
        p = (np.pi / 2.0) * s * np.exp(-np.pi * s * s / 4.0)
    elif beta == 2:
        p = (32.0 / np.pi**2) * s * s * np.exp(-4.0 * s * s / np.pi)
    else:
        p = (2.0**18 / (3.0**6 * np.pi**3)) * s**4 * np.exp(-64.0 * s * s / (9.0 * np.pi))
    return np.where(s >= 0, p, 0.0)


def mean_spacing(samples: Sequence[SpectrumSample]) -> float:
    """Mean nearest-neighbour spacing pooled over *samples* (all eigenvalues)."""
    gaps: List[np.ndarray] = [np.diff(np.asarray(s.eigenvalues)) for s in samples]
    pooled = np.concatenate(gaps) if gaps else np.zeros(0)
    if pooled.size == 0:
        raise InsufficientSamplesError("no spacings: every sample has dimension 1")
    return float(pooled.mean())

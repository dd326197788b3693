"""
Gaussian ensembles and the eigenvalue joint density.

Sampling conventions (``beta = 1`` orthogonal, ``beta = 2`` unitary):

=======  ==================  ==========================  ===================
beta     diagonal variance   off-diagonal                 eigenvalue JPDF
=======  ==================  ==========================  ===================
1        1                   real, variance 1/2           ``|Δ| e^{-Σx²/2}``
2        1/2                 complex, ``E|H_ij|² = 1/2``  ``|Δ|² e^{-Σx²}``
=======  ==================  ==========================  ===================

so the JPDF is ``|Δ|^β exp(-(β/2) Σ x²)`` and the spectrum fills a
semicircle of radius ``sqrt(2 n)``. Every sample draws from its own
stream ``(seed, index)``, so results never depend on the worker count.

The log-density uses the energy ``W = Σ V(x_j) - Σ_{i<j} ln|x_i - x_j|``
and ``P ∝ exp(-β W)``. Given a :class:`~loggas.Potentials.base.PotentialSpec`
the one-body term is its confinement ``∫W``; a plain callable is used as is.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Union

import numpy as np

from loggas.exceptions import ParameterDomainError
from loggas.OrthoPoly.base import PolynomialFamily, weight
from loggas.Potentials.base import PotentialSpec
from loggas.utils import (
    as_generator,
    generate_seed,
    min_pair_distance,
    pair_differences,
    stream_generator,
)

SAMPLED_BETAS = (1, 2)
JPDF_BETAS = (1, 2, 4)

OneBody = Union[PotentialSpec, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class SpectrumSample:
    """Sorted eigenvalues of one sampled matrix.

    Attributes:
        dim: Matrix size.
        beta: Dyson index of the ensemble.
        eigenvalues: Ascending eigenvalues, length ``dim``.
        seed: Root seed of the stream.
        stream: Stream index under ``seed`` (``None`` for a bare seed).
    """

    dim: int
    beta: int
    eigenvalues: np.ndarray = field(repr=False)
    seed: Optional[int] = None
    stream: Optional[int] = None


def _check_sampled(dim: int, beta: int) -> None:
    if int(dim) != dim or dim < 1:
        raise ParameterDomainError(f"dim must be a positive integer, got {dim}")
    if beta not in SAMPLED_BETAS:
        raise ParameterDomainError(
            f"sampling supports beta in {SAMPLED_BETAS}, got {beta} "
            "(beta = 4 is available for joint_log_pdf only)"
        )


def gaussian_matrix(dim: int, beta: int, rng) -> np.ndarray:
    """Draw a GOE (``beta = 1``) or GUE (``beta = 2``) matrix."""
    _check_sampled(dim, beta)
    rng = as_generator(rng)
    if beta == 1:
        a = rng.standard_normal((dim, dim))
        return 0.5 * (a + a.T)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / (2.0 * np.sqrt(2.0))


def sample_gaussian(
    dim: int, beta: int, seed: Optional[int] = None, stream: Optional[int] = None
) -> SpectrumSample:
    """
    Sample one Gaussian-ensemble spectrum.

    Args:
        dim: Matrix size, ``>= 1``.
        beta: ``1`` or ``2``.
        seed: Root seed; a fresh one is drawn (and recorded) if omitted.
        stream: Optional stream index under *seed*.

    Returns:
        A :class:`SpectrumSample`; the same ``(seed, stream)`` reproduces it
        bit for bit.

    Raises:
        ParameterDomainError: On ``dim < 1`` or an unsupported ``beta``.

    Example::

        s = sample_gaussian(3, 1, seed=7)
        s.eigenvalues          # sorted, length 3
    """
    _check_sampled(dim, beta)
    seed = generate_seed() if seed is None else int(seed)
    rng = stream_generator(seed, stream) if stream is not None else np.random.default_rng(seed)
    values = np.linalg.eigvalsh(gaussian_matrix(int(dim), beta, rng))
    values.setflags(write=False)
    return SpectrumSample(int(dim), beta, values, seed, stream)


def sample_many(
    dim: int,
    beta: int,
    count: int,
    seed: Optional[int] = None,
    workers: int = 1,
) -> List[SpectrumSample]:
    """*count* independent samples; sample ``i`` uses stream ``i`` of *seed*.

    ``workers > 1`` spreads the draws over a thread pool; the output is the
    same for any worker count.
    """
    _check_sampled(dim, beta)
    if count < 1:
        raise ParameterDomainError(f"count must be >= 1, got {count}")
    seed = generate_seed() if seed is None else int(seed)

    def draw(i: int) -> SpectrumSample:
        return sample_gaussian(dim, beta, seed=seed, stream=i)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(draw, range(count)))
    return [draw(i) for i in range(count)]


@dataclass(frozen=True)
class LogDensity:
    """Unnormalized log density; ``singular`` marks coincident entries (``-inf``)."""

    value: float
    singular: bool = False

    def __float__(self) -> float:
        return self.value


def _one_body(potential: OneBody, x: np.ndarray) -> np.ndarray:
    if isinstance(potential, PotentialSpec):
        if not np.all(potential.contains(x)):
            raise ParameterDomainError(f"entries leave the domain {potential.domain}")
        return potential.confinement(x)
    return np.asarray(potential(x), dtype=float)


def _log_vandermonde(x: np.ndarray) -> float:
    iu = np.triu_indices(x.size, k=1)
    return float(np.sum(np.log(np.abs(pair_differences(x)[iu]))))


def joint_log_pdf(x, beta: int, potential: OneBody) -> LogDensity:
    """
    ``-beta * (Σ V(x_j) - Σ_{i<j} ln|x_i - x_j|)``, without normalization.

    Args:
        x: Eigenvalue vector.
        beta: ``1``, ``2`` or ``4``.
        potential: A :class:`PotentialSpec` (its confinement is used) or a
            callable one-body potential.

    Returns:
        A :class:`LogDensity`; coincident entries give ``-inf`` with
        ``singular=True``.

    Example::

        float(joint_log_pdf([-1.0, 1.0], 2, lambda x: x**2))   # -2.6137...
    """
    if beta not in JPDF_BETAS:
        raise ParameterDomainError(f"beta must be one of {JPDF_BETAS}, got {beta}")
    x = np.asarray(x, dtype=float).ravel()
    confinement = float(np.sum(_one_body(potential, x)))
    if x.size > 1 and min_pair_distance(x) == 0:
        return LogDensity(-np.inf, singular=True)
    return LogDensity(-beta * (confinement - _log_vandermonde(x)))


def factorized_pdf(x, fam: PolynomialFamily) -> float:
    """
    ``Π w(x_i)**(1/2) Π_{i<j} |x_i - x_j|`` for the family weight ``w``.

    Raises:
        ParameterDomainError: If an entry lies outside the family interval.
    """
    x = np.asarray(x, dtype=float).ravel()
    if not np.all(fam.contains(x)):
        raise ParameterDomainError(f"entries leave the {fam.kind.value} interval {fam.interval}")
    root_weight = np.prod(np.sqrt(np.asarray(weight(fam, x), dtype=float)))
    iu = np.triu_indices(x.size, k=1)
    return float(root_weight * np.prod(np.abs(pair_differences(x)[iu])))


def product_wavefunction(x, potential: PotentialSpec) -> float:
    """
    ``Π_{k>j} (x_k - x_j) * Π exp(-∫W(x_i))``.

    The Vandermonde factor is signed, so swapping two entries flips the sign.

    Raises:
        ParameterDomainError: If an entry lies outside the domain.
    """
    x = np.asarray(x, dtype=float).ravel()
    envelope = np.exp(-np.sum(_one_body(potential, x)))
    iu = np.triu_indices(x.size, k=1)
    vandermonde = np.prod(-pair_differences(x)[iu])
    return float(vandermonde * envelope)

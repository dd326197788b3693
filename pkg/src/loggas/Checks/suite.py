"""
Cross-validation suite.

Each check ties two independent computations together (an equilibrium
and a Jacobi-matrix eigenvalue problem, a Langevin trajectory and direct
matrix sampling, ...) and reports the worst discrepancy with a verdict.
Parameters default to the acceptance settings and can be overridden per
check through :func:`run_suite`.

Example::

    from loggas.Checks.suite import run_suite

    results = run_suite(["stieltjes_identity", "drift_gradient"])
    all(r.passed for r in results)
"""

from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from pydantic import BaseModel, Field

from loggas.Checks.base import Check, CheckOutcome, CheckResult, check_from_function
from loggas.Dyson.base import evolve, gas_drift, stationarity_test
from loggas.Electrostatics.base import (
    classical_roots,
    equilibrium,
    log_gas_gradient,
    stieltjes_identity_check,
)
from loggas.Ensembles.base import joint_log_pdf, product_wavefunction, sample_many
from loggas.Ensembles.statistics import (
    gaussian_mean_spacing,
    mean_spacing,
    semicircle_distance,
    spacing_law_distance,
    spectral_statistics,
)
from loggas.exceptions import ParameterDomainError
from loggas.OrthoPoly.exceptional import (
    denominator,
    orthogonality,
    solve_exceptional,
)
from loggas.Potentials.base import PotentialName, make_potential
from loggas.Potentials.susy import shape_invariance_residual, shape_invariant_spectrum
from loggas.Potentials.variable_maps import variable_map
from loggas.QHJ.base import polynomial_spectrum, state_riccati_residual
from loggas.QHJ.contour import Rectangle, quantization_integral


class EquilibriumRootsParams(BaseModel):
    harmonic_max_n: int = Field(default=50, ge=2, description="Largest harmonic charge count")
    coulomb_l: List[int] = Field(default=[0, 1, 2], description="Angular momenta for Coulomb")
    coulomb_max_n: int = Field(default=30, ge=1, description="Largest Coulomb charge count")
    tol: float = Field(default=1e-8, gt=0)


def equilibrium_roots(params: EquilibriumRootsParams) -> CheckOutcome:
    """Log-gas equilibria coincide with Hermite and Laguerre zeros."""
    worst = 0.0
    cases = [(make_potential("harmonic"), n) for n in range(2, params.harmonic_max_n + 1)]
    for l in params.coulomb_l:
        spec = make_potential("coulomb", l=l)
        cases += [(spec, n) for n in range(1, params.coulomb_max_n + 1)]
    for spec, n in cases:
        cfg = equilibrium(n, spec)
        worst = max(worst, float(np.max(np.abs(cfg.positions - classical_roots(spec, n)))))
    return CheckOutcome(worst < params.tol, {"max_deviation": worst, "cases": len(cases)})


class StieltjesParams(BaseModel):
    trials: int = Field(default=100, ge=1)
    max_n: int = Field(default=20, ge=1)
    seed: int = 0
    tol: float = Field(default=1e-10, gt=0)


def stieltjes_identity(params: StieltjesParams) -> CheckOutcome:
    """``f''/(2f')`` at each root equals the pair sum over the other roots."""
    rng = np.random.default_rng(params.seed)
    worst = 0.0
    for _ in range(params.trials):
        n = int(rng.integers(1, params.max_n + 1))
        worst = max(worst, stieltjes_identity_check(np.sort(rng.uniform(-1.0, 1.0, n))))
    return CheckOutcome(worst < params.tol, {"max_residual": worst})


class QuantizationParams(BaseModel):
    n_max: int = Field(default=20, ge=0)
    coulomb_l: List[int] = Field(default=[0, 1, 2])
    energy_tol: float = Field(default=1e-10, gt=0)
    riccati_tol: float = Field(default=1e-8, gt=0)


def qhj_quantization(params: QuantizationParams) -> CheckOutcome:
    """Polynomial quantization: harmonic ladder, integer Coulomb eigenvalues, Riccati residuals."""
    harmonic = polynomial_spectrum(make_potential("harmonic"), params.n_max)
    energy_error = max(abs(s.energy - (1.0 + 2.0 * s.index)) for s in harmonic)
    riccati = max(state_riccati_residual(s) for s in harmonic)
    eigen_error = 0.0
    for l in params.coulomb_l:
        states = polynomial_spectrum(make_potential("coulomb", l=l), params.n_max)
        eigen_error = max(eigen_error, max(abs(s.eigenvalue - s.index) for s in states))
        riccati = max(riccati, max(state_riccati_residual(s) for s in states))
    passed = (
        energy_error < params.energy_tol and eigen_error == 0.0 and riccati < params.riccati_tol
    )
    return CheckOutcome(
        passed,
        {
            "harmonic_energy_error": energy_error,
            "coulomb_eigenvalue_error": eigen_error,
            "max_riccati_residual": riccati,
        },
    )


class ContourParams(BaseModel):
    n_max: int = Field(default=10, ge=1)
    nodes: int = Field(default=4096, ge=16)
    tol: float = Field(default=1e-6, gt=0)


def contour_quantization(params: ContourParams) -> CheckOutcome:
    """Contour integrals of ``p`` count the enclosed moving poles."""
    worst = 0.0
    evaluated = 0
    for state in polynomial_spectrum(make_potential("harmonic"), params.n_max):
        nodes = state.nodes
        contours = [(Rectangle(-1.0, 1.0, 1.0, 2.0), 0)]
        if nodes.size:
            contours.append((Rectangle(nodes[0] - 0.5, nodes[-1] + 0.5, -0.5, 0.5), nodes.size))
            gap = np.min(np.diff(nodes)) if nodes.size > 1 else 1.0
            h = 0.5 * gap
            x = nodes[nodes.size // 2]
            contours.append((Rectangle(x - h, x + h, -h, h), 1))
        for contour, expected in contours:
            value = quantization_integral(state, contour, nodes=params.nodes)
            worst = max(worst, abs(value - expected))
            evaluated += 1
    return CheckOutcome(worst < params.tol, {"max_count_error": worst, "contours": evaluated})


class WavefunctionParams(BaseModel):
    configs: int = Field(default=50, ge=2)
    max_n: int = Field(default=10, ge=1)
    seed: int = 0
    tol: float = Field(default=1e-10, gt=0)


def rpdf_wavefunction(params: WavefunctionParams) -> CheckOutcome:
    """``product_wavefunction**2`` is proportional to the beta = 2 JPDF."""
    rng = np.random.default_rng(params.seed)
    spec = make_potential("harmonic")
    worst = 0.0
    for n in range(1, params.max_n + 1):
        ratios = []
        for _ in range(params.configs):
            x = np.sort(rng.uniform(-3.0, 3.0, n))
            psi = product_wavefunction(x, spec)
            ratios.append(psi * psi / np.exp(float(joint_log_pdf(x, 2, spec))))
        ratios = np.asarray(ratios)
        worst = max(worst, float((ratios.max() - ratios.min()) / abs(ratios.mean())))
    return CheckOutcome(worst < params.tol, {"max_relative_spread": worst})


class StationarityParams(BaseModel):
    n: int = Field(default=8, ge=2)
    beta: int = Field(default=1, ge=1, le=2)
    dt: float = Field(default=5e-3, gt=0)
    chains: int = Field(default=250, ge=1)
    burnin_time: Optional[float] = Field(default=None, ge=0, description="Time units; default 10 n**2")
    steps: int = Field(default=1000, ge=1)
    thin: int = Field(default=200, ge=1)
    seeds: List[int] = Field(default=[1, 2, 3])
    tol: float = Field(default=0.03, gt=0)
    workers: int = Field(default=1, ge=1)


def fokker_planck_stationarity(params: StationarityParams) -> CheckOutcome:
    """Burned-in Dyson gas positions match direct Gaussian-ensemble eigenvalues."""
    spec = make_potential("harmonic")
    distances = []
    for seed in params.seeds:
        traj = evolve(
            params.n, spec, beta=params.beta, dt=params.dt, steps=params.steps,
            burnin_time=params.burnin_time, thin=params.thin, chains=params.chains, seed=seed,
            workers=params.workers,
        )
        direct = sample_many(
            params.n, params.beta, traj.positions.shape[0] * params.chains,
            seed=seed + 10_000, workers=params.workers,
        )
        distances.append(stationarity_test(traj, direct))
    return CheckOutcome(
        max(distances) < params.tol,
        {"ks_distances": distances, "burnin_steps": traj.metadata["burnin"]},
    )


class SamplingParams(BaseModel):
    dim: int = Field(default=200, ge=2)
    count: int = Field(default=500, ge=1)
    window: float = Field(default=0.8, gt=0, le=1)
    density_tol: float = Field(default=0.05, gt=0)
    spacing_draws: int = Field(default=20_000, ge=100)
    spacing_tol: float = Field(default=0.02, gt=0)
    seed: int = 0
    workers: int = Field(default=1, ge=1)


def sampling_sanity(params: SamplingParams) -> CheckOutcome:
    """GOE bulk density follows the semicircle; 2x2 spacings follow the quadrature law."""
    stats = spectral_statistics(
        sample_many(params.dim, 1, params.count, seed=params.seed, workers=params.workers)
    )
    distance = semicircle_distance(stats, params.window)
    pairs = sample_many(2, 1, params.spacing_draws, seed=params.seed + 1, workers=params.workers)
    ks = spacing_law_distance(pairs)
    observed = mean_spacing(pairs)
    expected = gaussian_mean_spacing(1)
    rel = abs(observed - expected) / expected
    return CheckOutcome(
        distance < params.density_tol and ks < params.spacing_tol and rel < params.spacing_tol,
        {"semicircle_distance": distance, "spacing_ks_distance": ks, "mean_spacing": observed,
         "expected_spacing": expected, "spacing_relative_error": rel},
    )


class ExceptionalParams(BaseModel):
    g_values: List[float] = Field(default=[1.0, 2.0])
    max_degree: int = Field(default=6, ge=1)
    residual_tol: float = Field(default=1e-8, gt=0)
    orthogonality_tol: float = Field(default=1e-6, gt=0)
    x_max: float = Field(default=50.0, gt=0)


def exceptional_laguerre(params: ExceptionalParams) -> CheckOutcome:
    """X1 polynomials: cleared-ODE residual, orthogonality, positive denominator."""
    residual = overlap = 0.0
    min_denominator = np.inf
    grid = np.linspace(0.0, params.x_max, 5001)
    for g in params.g_values:
        degrees = range(1, params.max_degree + 1)
        residual = max(residual, max(solve_exceptional(g, n).residual for n in degrees))
        for m, n in combinations(degrees, 2):
            overlap = max(overlap, orthogonality(g, m, n))
        min_denominator = min(min_denominator, float(np.min(denominator(g, grid))))
    passed = (
        residual < params.residual_tol
        and overlap < params.orthogonality_tol
        and min_denominator > 0
    )
    return CheckOutcome(
        passed,
        {"max_residual": residual, "max_overlap": overlap, "min_denominator": min_denominator},
    )


class DriftParams(BaseModel):
    configs: int = Field(default=100, ge=1)
    max_n: int = Field(default=12, ge=2)
    seed: int = 0
    tol: float = Field(default=1e-14, gt=0)


def drift_gradient(params: DriftParams) -> CheckOutcome:
    """Dyson drift is minus the electrostatic gradient."""
    rng = np.random.default_rng(params.seed)
    specs = [make_potential("harmonic"), make_potential("coulomb", l=1)]
    worst = 0.0
    for i in range(params.configs):
        spec = specs[i % len(specs)]
        n = int(rng.integers(2, params.max_n + 1))
        lo = 0.1 if spec.domain[0] == 0 else -4.0
        x = np.sort(rng.uniform(lo, 8.0, n))
        worst = max(worst, float(np.max(np.abs(gas_drift(x, spec) + log_gas_gradient(x, spec)))))
    return CheckOutcome(worst < params.tol, {"max_mismatch": worst})


class SusyParams(BaseModel):
    n_max: int = Field(default=10, ge=0)
    tol: float = Field(default=1e-10, gt=0)


def susy_hierarchy(params: SusyParams) -> CheckOutcome:
    """Partner identities, Coulomb maps, shape invariance and SUSY spectra."""
    partner = max(make_potential(name).partner_residual() for name in PotentialName)
    maps = max(
        variable_map(name).identity_residual()
        for name in ("Oscillator3D->Coulomb", "Morse->Coulomb", "Scarf->Coulomb")
    )
    shape = spectra = 0.0
    for name in (PotentialName.HARMONIC, PotentialName.COULOMB, PotentialName.OSCILLATOR_3D):
        spec = make_potential(name)
        shape = max(shape, shape_invariance_residual(spec))
        algebraic = shape_invariant_spectrum(spec, params.n_max)
        polynomial = [s.energy for s in polynomial_spectrum(spec, params.n_max)]
        spectra = max(spectra, float(np.max(np.abs(np.subtract(algebraic, polynomial)))))
    for name in (PotentialName.MORSE, PotentialName.SCARF):
        shape = max(shape, shape_invariance_residual(make_potential(name)))
    worst = max(partner, maps, shape, spectra)
    return CheckOutcome(
        worst < params.tol,
        {
            "partner_residual": partner,
            "map_residual": maps,
            "shape_invariance_residual": shape,
            "spectrum_mismatch": spectra,
        },
    )


CHECKS: Dict[str, Check] = {
    check.name: check
    for check in map(
        check_from_function,
        [
            equilibrium_roots,
            stieltjes_identity,
            qhj_quantization,
            contour_quantization,
            rpdf_wavefunction,
            fokker_planck_stationarity,
            sampling_sanity,
            exceptional_laguerre,
            drift_gradient,
            susy_hierarchy,
        ],
    )
}


def run_suite(
    names: Optional[Sequence[str]] = None,
    overrides: Optional[Mapping[str, Mapping]] = None,
    verbose: bool = False,
) -> List[CheckResult]:
    """
    Run checks in order and collect their results.

    Args:
        names: Checks to run; all of :data:`CHECKS` if omitted.
        overrides: Per-check parameter overrides, keyed by check name.
        verbose: Print one line per check.

    Raises:
        ParameterDomainError: On an unknown check name.
    """
    names = list(CHECKS) if names is None else list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ParameterDomainError(f"unknown check(s) {unknown}; available: {list(CHECKS)}")
    overrides = dict(overrides or {})
    results = []
    for name in names:
        if verbose:
            print(f"🔎 {name} ...")
        result = CHECKS[name].execute(**dict(overrides.get(name, {})))
        if verbose:
            mark = "✅" if result.passed else "❌"
            print(f"{mark} {name} ({result.elapsed:.2f}s) {result.error or result.metrics}")
        results.append(result)
    return results


def report_rows(results: Sequence[CheckResult]) -> List[List]:
    """CSV rows ``check, passed, metric, value``."""
    rows = []
    for r in results:
        if not r.metrics:
            rows.append([r.name, str(r.passed), "error", r.error or ""])
        for key, value in r.metrics.items():
            values = value if isinstance(value, (list, tuple)) else [value]
            for v in values:
                rows.append([r.name, str(r.passed), key, v])
    return rows

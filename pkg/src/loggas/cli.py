"""
Command-line front end.

One subcommand per experiment; each run writes its artifacts plus a
``manifest.json`` (config, seed, version, wall time) into the output
directory. A manifest can be replayed with ``--from-manifest``, which
reproduces every artifact byte for byte.

Exit codes:
    ``0`` success, ``2`` configuration error, ``3`` numerical failure,
    ``4`` failed check.

Environment (a ``.env`` file is honoured):
    ``LOGGAS_OUTPUT_DIR`` -- default output directory.
    ``LOGGAS_WORKERS`` -- default worker count.

Example::

    loggas equilibrium --n 5 --potential coulomb --l 0 --out runs/coulomb
    loggas quantize --potential harmonic --nmax 3
    loggas sample --dim 200 --beta 1 --count 500 --seed 7
    loggas check --checks stieltjes_identity drift_gradient
"""

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from loggas import __version__
from loggas.Checks.suite import CHECKS, report_rows, run_suite
from loggas.Dyson.base import evolve
from loggas.Electrostatics.base import classical_roots, energy, equilibrium, gradient
from loggas.Ensembles.base import joint_log_pdf, product_wavefunction, sample_many
from loggas.Ensembles.statistics import spectral_statistics
from loggas.exceptions import ParameterDomainError, UnsupportedPotentialError
from loggas.OrthoPoly.base import (
    PolynomialFamily,
    coefficients,
    export_coefficients_csv,
    export_roots_csv,
    gauss_quadrature,
    roots,
)
from loggas.Potentials.base import PotentialSpec, load_potential, make_potential
from loggas.Potentials.susy import shape_invariant_spectrum
from loggas.QHJ.base import polynomial_spectrum
from loggas.utils import generate_seed, write_csv, write_json

MANIFEST_NAME = "manifest.json"
ERROR_NAME = "error.json"
DEFAULT_OUTPUT_DIR = "loggas-output"

COMMANDS = ("equilibrium", "roots", "quantize", "sample", "evolve", "pdf", "check")
POTENTIAL_FLAGS = ("l", "Z", "A", "B", "alpha", "g")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_CHECK_FAILED = 4


class RunConfig(BaseModel):
    """Validated parameters of one CLI run.

    Only the fields a command uses matter to it; the rest keep their
    defaults and are still recorded in the manifest.
    """

    model_config = ConfigDict(extra="forbid")

    command: Literal["equilibrium", "roots", "quantize", "sample", "evolve", "pdf", "check"]
    potential: str = Field(
        default="harmonic", description="Catalog name, inline JSON document or JSON file path"
    )
    params: Dict[str, float] = Field(default_factory=dict, description="Potential parameters")
    n: int = Field(default=5, ge=1, description="Number of charges or polynomial degree")
    nmax: int = Field(default=5, ge=0, description="Highest quantized level")
    family: Literal["hermite", "laguerre", "jacobi", "exceptional"] = "hermite"
    a: float = Field(default=0.0, description="First family parameter")
    b: float = Field(default=0.0, description="Second family parameter (Jacobi)")
    g: float = Field(default=1.0, description="Exceptional-family parameter")
    dim: int = Field(default=2, ge=1)
    beta: int = Field(default=2, description="Dyson index")
    count: int = Field(default=100, ge=1)
    bins: int = Field(default=50, ge=1)
    dt: float = Field(default=1e-3, gt=0)
    steps: int = Field(default=1000, ge=0)
    burnin: Optional[int] = Field(default=None, ge=0, description="Discarded steps")
    burnin_time: Optional[float] = Field(default=None, ge=0, description="Discarded time units")
    thin: Optional[int] = Field(default=None, ge=1)
    chains: int = Field(default=1, ge=1)
    points: Optional[List[float]] = Field(default=None, description="Configuration for pdf")
    checks: Optional[List[str]] = Field(default=None, description="Subset of the check suite")
    seed: Optional[int] = Field(default=None, ge=0)
    out: str = Field(default=DEFAULT_OUTPUT_DIR, description="Output directory")
    format: Literal["csv", "json"] = "csv"
    workers: int = Field(default=1, ge=1)
    verbose: bool = False

    @model_validator(mode="after")
    def _fill_and_check(self) -> "RunConfig":
        if self.beta not in (1, 2, 4):
            raise ValueError(f"beta must be 1, 2 or 4, got {self.beta}")
        if self.checks is not None:
            unknown = [c for c in self.checks if c not in CHECKS]
            if unknown:
                raise ValueError(f"unknown check(s) {unknown}; available: {list(CHECKS)}")
        if self.seed is None:
            self.seed = generate_seed()
        return self


Artifacts = Tuple[List[Path], Dict, int]


def _potential(config: RunConfig) -> PotentialSpec:
    spec = load_potential(config.potential)
    if config.params:
        spec = make_potential(spec.name, {**spec.params, **config.params})
    return spec


def _run_equilibrium(config: RunConfig, out: Path) -> Artifacts:
    spec = _potential(config)
    cfg = equilibrium(config.n, spec, beta=config.beta, verbose=config.verbose)
    grad = gradient(cfg)
    oracle = classical_roots(spec, cfg.n)
    deviation = None if oracle is None else np.abs(cfg.positions - oracle)
    if config.format == "csv":
        rows = []
        for i, x in enumerate(cfg.positions):
            matched = ["", ""] if oracle is None else [oracle[i], deviation[i]]
            rows.append([i, x, grad[i], *matched])
        header = ["index", "position", "gradient", "matched_root", "deviation"]
        files = [write_csv(out / "equilibrium.csv", header, rows)]
    else:
        doc = {
            "potential": spec.to_dict(),
            "positions": cfg.positions,
            "gradient": grad,
            "energy": energy(cfg),
            "matched_roots": oracle,
            "deviation": deviation,
        }
        files = [write_json(out / "equilibrium.json", doc)]
    return files, dict(cfg.metadata), EXIT_OK


def _family(config: RunConfig, degree: int) -> PolynomialFamily:
    if config.family == "hermite":
        return PolynomialFamily.hermite(degree)
    if config.family == "laguerre":
        return PolynomialFamily.laguerre(config.a, degree)
    if config.family == "jacobi":
        return PolynomialFamily.jacobi(config.a, config.b, degree)
    return PolynomialFamily.exceptional_laguerre(config.g, degree)


def _run_roots(config: RunConfig, out: Path) -> Artifacts:
    fam = _family(config, config.n)
    zeros = roots(fam)
    first = 0 if fam.is_classical else 1
    members = [_family(config, d) for d in range(first, config.n + 1)]
    if config.format == "csv":
        files = [
            export_roots_csv(zeros, out / "roots.csv"),
            export_coefficients_csv(members, out / "coefficients.csv"),
        ]
    else:
        doc = {
            "family": fam.kind.value,
            "degree": fam.degree,
            "roots": zeros,
            "coefficients": {m.degree: coefficients(m) for m in members},
        }
        if fam.is_classical:
            doc["quadrature_weights"] = gauss_quadrature(fam)[1]
        files = [write_json(out / "roots.json", doc)]
    return files, {"family": fam.kind.value, "degree": fam.degree}, EXIT_OK


def _run_quantize(config: RunConfig, out: Path) -> Artifacts:
    spec = _potential(config)
    try:
        states = [s.to_dict() for s in polynomial_spectrum(spec, config.nmax, config.workers)]
        method = "polynomial"
    except UnsupportedPotentialError:
        energies = shape_invariant_spectrum(spec, config.nmax)
        states = [{"n": i, "E": e} for i, e in enumerate(energies)]
        method = "shape_invariance"
    files = [
        write_json(
            out / "quantize.json",
            {"potential": spec.to_dict(), "method": method, "states": states},
        ),
        write_csv(out / "energies.csv", ["n", "E"], [[s["n"], s["E"]] for s in states]),
    ]
    return files, {"method": method, "levels": len(states)}, EXIT_OK


def _run_sample(config: RunConfig, out: Path) -> Artifacts:
    samples = sample_many(
        config.dim, config.beta, config.count, seed=config.seed, workers=config.workers
    )
    if config.format == "csv":
        header = ["sample"] + [f"lambda_{i + 1}" for i in range(config.dim)]
        rows = [[s.stream, *s.eigenvalues] for s in samples]
        table = write_csv(out / "eigenvalues.csv", header, rows)
    else:
        table = write_json(
            out / "eigenvalues.json",
            {"dim": config.dim, "beta": config.beta, "eigenvalues": [s.eigenvalues for s in samples]},
        )
    stats = spectral_statistics(samples, bins=config.bins)
    files = [table, write_json(out / "histogram.json", stats.to_dict())]
    return files, {"dim": config.dim, "beta": config.beta, "count": config.count}, EXIT_OK


def _run_evolve(config: RunConfig, out: Path) -> Artifacts:
    spec = _potential(config)
    traj = evolve(
        config.n,
        spec,
        beta=config.beta,
        dt=config.dt,
        steps=config.steps,
        burnin=config.burnin,
        burnin_time=config.burnin_time,
        thin=config.thin,
        chains=config.chains,
        seed=config.seed,
        workers=config.workers,
        verbose=config.verbose,
    )
    if config.format == "csv":
        header = ["snapshot", "chain", "time"] + [f"x_{i + 1}" for i in range(config.n)]
        table = write_csv(out / "trajectory.csv", header, traj.rows())
    else:
        table = write_json(
            out / "trajectory.json", {"times": traj.times, "positions": traj.positions}
        )
    files = [table, write_json(out / "trajectory_metadata.json", traj.metadata)]
    return files, dict(traj.metadata), EXIT_OK


def _run_pdf(config: RunConfig, out: Path) -> Artifacts:
    spec = _potential(config)
    if config.points is None:
        x = equilibrium(config.n, spec).positions
    else:
        x = np.sort(np.asarray(config.points, dtype=float))
    log_density = joint_log_pdf(x, config.beta, spec)
    psi = product_wavefunction(x, spec)
    if config.format == "csv":
        header = ["beta", "log_density", "singular", "product_wavefunction"] + [
            f"x_{i + 1}" for i in range(x.size)
        ]
        row = [config.beta, log_density.value, str(log_density.singular), psi, *x]
        files = [write_csv(out / "pdf.csv", header, [row])]
    else:
        doc = {
            "potential": spec.to_dict(),
            "beta": config.beta,
            "positions": x,
            "log_density": log_density.value,
            "singular": log_density.singular,
            "product_wavefunction": psi,
        }
        files = [write_json(out / "pdf.json", doc)]
    return files, {"n": int(x.size)}, EXIT_OK


def _run_check(config: RunConfig, out: Path) -> Artifacts:
    names = config.checks or list(CHECKS)
    overrides = {
        name: {"workers": config.workers}
        for name in names
        if "workers" in CHECKS[name].parameters["properties"]
    }
    results = run_suite(names, overrides=overrides, verbose=config.verbose)
    passed = all(r.passed for r in results)
    report = {
        "passed": passed,
        "checks": [{k: v for k, v in r.to_dict().items() if k != "elapsed"} for r in results],
    }
    files = [
        write_json(out / "report.json", report),
        write_csv(out / "report.csv", ["check", "passed", "metric", "value"], report_rows(results)),
    ]
    metadata = {"elapsed": {r.name: r.elapsed for r in results}}
    return files, metadata, EXIT_OK if passed else EXIT_CHECK_FAILED


_HANDLERS: Dict[str, Callable[[RunConfig, Path], Artifacts]] = {
    "equilibrium": _run_equilibrium,
    "roots": _run_roots,
    "quantize": _run_quantize,
    "sample": _run_sample,
    "evolve": _run_evolve,
    "pdf": _run_pdf,
    "check": _run_check,
}


def run(config: RunConfig) -> int:
    """
    Execute one configured experiment and write its manifest.

    Returns:
        The exit status: ``0``, or ``4`` when a check failed.

    Raises:
        loggas.exceptions.LogGasError: Propagated from the numerical modules.
    """
    start = time.perf_counter()
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    if config.verbose:
        print(f"🚀 loggas {config.command} (seed {config.seed}) -> {out}")
    files, metadata, status = _HANDLERS[config.command](config, out)
    manifest = {
        "config": config.model_dump(mode="json"),
        "seed": config.seed,
        "version": __version__,
        "wall_time": time.perf_counter() - start,
        "outputs": sorted(p.name for p in files),
        "status": status,
        "metadata": metadata,
    }
    write_json(out / MANIFEST_NAME, manifest)
    if config.verbose:
        print(f"✅ wrote {len(files)} file(s) in {manifest['wall_time']:.2f}s")
    return status


class _ArgumentParser(argparse.ArgumentParser):
    """Parser whose usage errors become configuration errors."""

    def error(self, message):
        raise ParameterDomainError(message)


def default_output_dir() -> str:
    return os.getenv("LOGGAS_OUTPUT_DIR", DEFAULT_OUTPUT_DIR)


def default_workers() -> int:
    raw = os.getenv("LOGGAS_WORKERS")
    if raw is None:
        return 1
    try:
        return int(raw)
    except ValueError as e:
        raise ParameterDomainError(f"LOGGAS_WORKERS must be an integer, got {raw!r}") from e


def build_parser() -> argparse.ArgumentParser:
    """The ``loggas`` argument parser with one subparser per command."""
    common = _ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Root seed; generated and recorded if omitted")
    common.add_argument("--out", help="Output directory (default: $LOGGAS_OUTPUT_DIR)")
    common.add_argument("--format", choices=["csv", "json"], help="Table format")
    common.add_argument("--workers", type=int, help="Worker threads (default: $LOGGAS_WORKERS)")
    common.add_argument("--verbose", action="store_true", default=None, help="Print progress")

    potential = _ArgumentParser(add_help=False)
    potential.add_argument(
        "--potential", help="Catalog name, inline JSON or path to a potential JSON document"
    )
    for flag in POTENTIAL_FLAGS:
        potential.add_argument(f"--{flag}", dest=f"p_{flag}", type=float, help=f"Potential parameter {flag}")

    parser = _ArgumentParser(prog="loggas", description="Log-gas, QHJ and random-matrix experiments")
    parser.add_argument("--version", action="version", version=f"loggas {__version__}")
    parser.add_argument("--from-manifest", dest="from_manifest", help="Replay a manifest.json")
    parser.add_argument("--out", dest="rerun_out", help="Output directory for --from-manifest")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("equilibrium", parents=[common, potential], help="Log-gas equilibrium")
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=int)

    p = sub.add_parser("roots", parents=[common], help="Orthogonal-polynomial zeros")
    p.add_argument("--family", choices=["hermite", "laguerre", "jacobi", "exceptional"])
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--g", type=float)

    p = sub.add_parser("quantize", parents=[common, potential], help="QHJ polynomial spectrum")
    p.add_argument("--nmax", type=int)

    p = sub.add_parser("sample", parents=[common], help="Gaussian-ensemble spectra")
    p.add_argument("--dim", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--bins", type=int)

    p = sub.add_parser("evolve", parents=[common, potential], help="Dyson gas trajectories")
    p.add_argument("--n", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--burnin", type=int)
    p.add_argument("--burnin-time", dest="burnin_time", type=float)
    p.add_argument("--thin", type=int)
    p.add_argument("--chains", type=int)

    p = sub.add_parser("pdf", parents=[common, potential], help="Joint eigenvalue density")
    p.add_argument("--beta", type=int)
    p.add_argument("--n", type=int, help="Use the n-charge equilibrium when --x is omitted")
    p.add_argument("--x", dest="points", type=float, nargs="+", help="Configuration")

    p = sub.add_parser("check", parents=[common], help="Cross-validation suite")
    p.add_argument("--checks", nargs="+", help=f"Subset of {', '.join(CHECKS)}")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Build a :class:`RunConfig` from parsed arguments, a manifest, and the environment."""
    if args.from_manifest:
        try:
            with open(args.from_manifest, encoding="utf-8") as f:
                data = json.load(f)["config"]
        except (OSError, ValueError, KeyError, TypeError) as e:
            raise ParameterDomainError(f"cannot replay manifest {args.from_manifest}: {e}") from e
        if args.rerun_out:
            data["out"] = args.rerun_out
        return RunConfig(**data)
    if args.command is None:
        raise ParameterDomainError(f"a command is required: one of {list(COMMANDS)}")
    values = {
        key: value
        for key, value in vars(args).items()
        if value is not None and key in RunConfig.model_fields
    }
    values["params"] = {
        flag: getattr(args, f"p_{flag}")
        for flag in POTENTIAL_FLAGS
        if getattr(args, f"p_{flag}", None) is not None
    }
    values.setdefault("out", default_output_dir())
    values.setdefault("workers", default_workers())
    return RunConfig(**values)


def exit_code(error: BaseException) -> int:
    """Map an exception onto the CLI exit status; anything not a configuration error is numerical."""
    if isinstance(error, (ValidationError, ParameterDomainError)):
        return EXIT_CONFIG
    return EXIT_NUMERICAL


def _report_error(error: BaseException, out: Path) -> int:
    code = exit_code(error)
    payload = {"error": type(error).__name__, "message": str(error), "exit_code": code}
    try:
        write_json(out / ERROR_NAME, payload)
    except OSError:
        pass
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the ``loggas`` command.

    Args:
        argv: Arguments without the program name; ``sys.argv[1:]`` if omitted.

    Returns:
        The exit status.
    """
    from dotenv import load_dotenv

    load_dotenv()
    out = Path(default_output_dir())
    try:
        args = build_parser().parse_args(argv)
        config = config_from_args(args)
        out = Path(config.out)
        return run(config)
    except Exception as e:
        return _report_error(e, out)


if __name__ == "__main__":
    sys.exit(main())

"""Integration tests for the loggas command line."""

import json

import numpy as np
import pytest

from loggas import cli
from loggas.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG,
    EXIT_NUMERICAL,
    EXIT_OK,
    RunConfig,
    exit_code,
    main,
)
from loggas.exceptions import ConvergenceError, ParameterDomainError
from loggas.utils import read_csv

pytestmark = pytest.mark.integration


def _manifest(out):
    return json.loads((out / "manifest.json").read_text())


class TestCommands:
    """Tests for each subcommand's artifacts."""

    def test_equilibrium_coulomb(self, tmp_path):
        """Test five Coulomb charges matched to Laguerre zeros."""
        out = tmp_path / "eq"
        assert main(["equilibrium", "--n", "5", "--potential", "coulomb", "--l", "0", "--out", str(out)]) == EXIT_OK

        header, rows = read_csv(out / "equilibrium.csv")
        assert header == ["index", "position", "gradient", "matched_root", "deviation"]
        assert len(rows) == 5
        assert max(float(r[4]) for r in rows) < 1e-8
        manifest = _manifest(out)
        assert manifest["outputs"] == ["equilibrium.csv"]
        assert manifest["config"]["params"] == {"l": 0.0}
        assert isinstance(manifest["seed"], int)

    def test_equilibrium_json(self, tmp_path):
        """Test the JSON document for the harmonic case."""
        out = tmp_path / "eq"
        main(["equilibrium", "--n", "2", "--format", "json", "--out", str(out)])
        doc = json.loads((out / "equilibrium.json").read_text())

        assert np.allclose(doc["positions"], [-1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert doc["energy"] == pytest.approx(0.5 - np.log(np.sqrt(2)))

    def test_quantize_harmonic(self, tmp_path):
        """Test energies 1, 3, 5, 7."""
        out = tmp_path / "q"
        assert main(["quantize", "--potential", "harmonic", "--nmax", "3", "--out", str(out)]) == EXIT_OK

        _, rows = read_csv(out / "energies.csv")
        assert [float(r[1]) for r in rows] == pytest.approx([1.0, 3.0, 5.0, 7.0])
        doc = json.loads((out / "quantize.json").read_text())
        assert doc["method"] == "polynomial"
        assert set(doc["states"][0]) == {"n", "E", "eigenvalue", "f_coeffs", "nodes"}

    def test_quantize_morse_uses_shape_invariance(self, tmp_path):
        """Test that Morse falls back to the SUSY hierarchy."""
        out = tmp_path / "q"
        main(["quantize", "--potential", "morse", "--nmax", "5", "--out", str(out)])
        doc = json.loads((out / "quantize.json").read_text())

        assert doc["method"] == "shape_invariance"
        assert [s["E"] for s in doc["states"]] == pytest.approx([0.0, 3.0])

    def test_roots_json(self, tmp_path):
        """Test Hermite roots with quadrature weights."""
        out = tmp_path / "r"
        main(["roots", "--family", "hermite", "--n", "2", "--format", "json", "--out", str(out)])
        doc = json.loads((out / "roots.json").read_text())

        assert np.allclose(doc["roots"], [-1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert sum(doc["quadrature_weights"]) == pytest.approx(np.sqrt(np.pi))
        assert set(doc["coefficients"]) == {"0", "1", "2"}

    def test_roots_csv(self, tmp_path):
        """Test the roots and coefficient tables."""
        out = tmp_path / "r"
        main(["roots", "--family", "laguerre", "--a", "1", "--n", "3", "--out", str(out)])

        assert len(read_csv(out / "roots.csv")[1]) == 3
        assert len(read_csv(out / "coefficients.csv")[1]) == 4

    def test_sample_is_reproducible(self, tmp_path):
        """Test that one seed writes byte-identical eigenvalue tables."""
        args = ["sample", "--dim", "1", "--beta", "1", "--count", "1", "--seed", "7"]
        assert main(args + ["--out", str(tmp_path / "a")]) == EXIT_OK
        assert main(args + ["--out", str(tmp_path / "b")]) == EXIT_OK

        first = (tmp_path / "a" / "eigenvalues.csv").read_bytes()
        assert first == (tmp_path / "b" / "eigenvalues.csv").read_bytes()
        assert (tmp_path / "a" / "histogram.json").exists()

    def test_evolve(self, tmp_path):
        """Test trajectory rows and metadata."""
        out = tmp_path / "ev"
        main(["evolve", "--n", "3", "--steps", "20", "--burnin", "0", "--thin", "5", "--chains", "2",
              "--seed", "1", "--out", str(out)])

        header, rows = read_csv(out / "trajectory.csv")
        assert header == ["snapshot", "chain", "time", "x_1", "x_2", "x_3"]
        assert len(rows) == 8
        assert json.loads((out / "trajectory_metadata.json").read_text())["seed"] == 1

    def test_evolve_burnin_time(self, tmp_path):
        """Test that --burnin-time is converted to steps and that it excludes --burnin."""
        out = tmp_path / "ev"
        code = main(["evolve", "--n", "2", "--dt", "1e-3", "--steps", "4", "--burnin-time", "0.01",
                     "--thin", "2", "--seed", "1", "--out", str(out)])

        assert code == 0
        assert json.loads((out / "trajectory_metadata.json").read_text())["burnin"] == 10
        assert main(["evolve", "--burnin", "3", "--burnin-time", "0.01", "--out", str(tmp_path / "both")]) == 2

    def test_pdf(self, tmp_path):
        """Test the harmonic density and wavefunction at (-1, 1)."""
        out = tmp_path / "pdf"
        main(["pdf", "--x", "-1", "1", "--beta", "2", "--out", str(out)])

        header, rows = read_csv(out / "pdf.csv")
        assert header[:4] == ["beta", "log_density", "singular", "product_wavefunction"]
        assert float(rows[0][1]) == pytest.approx(-2.0 * (1.0 - np.log(2.0)))
        assert rows[0][2] == "False"
        assert float(rows[0][3]) == pytest.approx(2.0 * np.exp(-1.0))

    def test_check_subset(self, tmp_path):
        """Test a passing run of two checks."""
        out = tmp_path / "chk"
        assert main(["check", "--checks", "stieltjes_identity", "drift_gradient", "--out", str(out)]) == EXIT_OK

        report = json.loads((out / "report.json").read_text())
        assert report["passed"] is True
        assert [c["name"] for c in report["checks"]] == ["stieltjes_identity", "drift_gradient"]
        assert read_csv(out / "report.csv")[0] == ["check", "passed", "metric", "value"]

    def test_failed_check_exit_code(self, tmp_path, monkeypatch):
        """Test that a failing check exits with 4."""
        from loggas.Checks.base import CheckResult

        def failing(names, overrides=None, verbose=False):
            return [CheckResult(name=names[0], success=True, passed=False, metrics={"x": 1.0})]

        monkeypatch.setattr(cli, "run_suite", failing)

        assert main(["check", "--checks", "drift_gradient", "--out", str(tmp_path)]) == EXIT_CHECK_FAILED

    def test_default_output_dir(self, output_dir):
        """Test that LOGGAS_OUTPUT_DIR is used without --out."""
        assert main(["quantize", "--nmax", "1"]) == EXIT_OK
        assert (output_dir / "energies.csv").exists()


class TestManifest:
    """Tests for manifest replay."""

    def test_replay_reproduces_artifacts(self, tmp_path):
        """Test that --from-manifest rewrites identical files."""
        first = tmp_path / "first"
        main(["sample", "--dim", "3", "--count", "5", "--seed", "11", "--out", str(first)])
        again = tmp_path / "again"
        assert main(["--from-manifest", str(first / "manifest.json"), "--out", str(again)]) == EXIT_OK

        for name in ("eigenvalues.csv", "histogram.json"):
            assert (first / name).read_bytes() == (again / name).read_bytes()
        assert _manifest(again)["seed"] == 11

    def test_seed_generated_and_recorded(self, tmp_path):
        """Test that an omitted seed is recorded and replays exactly."""
        first = tmp_path / "first"
        main(["sample", "--dim", "2", "--count", "3", "--out", str(first)])
        again = tmp_path / "again"
        main(["--from-manifest", str(first / "manifest.json"), "--out", str(again)])

        assert (first / "eigenvalues.csv").read_bytes() == (again / "eigenvalues.csv").read_bytes()


class TestErrors:
    """Tests for exit codes and error reports."""

    def test_bad_beta(self, tmp_path, output_dir):
        """Test that beta = 3 is a configuration error with an error report."""
        assert main(["sample", "--beta", "3", "--out", str(tmp_path)]) == EXIT_CONFIG

        payload = json.loads((output_dir / "error.json").read_text())
        assert payload["exit_code"] == EXIT_CONFIG
        assert payload["error"] == "ValidationError"

    def test_unknown_potential(self, tmp_path):
        """Test that an unknown potential reports into the output directory."""
        assert main(["equilibrium", "--potential", "yukawa", "--out", str(tmp_path)]) == EXIT_CONFIG
        assert json.loads((tmp_path / "error.json").read_text())["error"] == "ParameterDomainError"

    def test_usage_errors(self, output_dir, capsys):
        """Test unknown flags and a missing command."""
        assert main(["equilibrium", "--bogus"]) == EXIT_CONFIG
        assert main([]) == EXIT_CONFIG
        assert '"exit_code": 2' in capsys.readouterr().err

    def test_bad_workers_env(self, output_dir, monkeypatch):
        """Test a non-integer LOGGAS_WORKERS."""
        monkeypatch.setenv("LOGGAS_WORKERS", "many")

        assert main(["quantize"]) == EXIT_CONFIG

    def test_numerical_failure(self, tmp_path, monkeypatch):
        """Test that a solver failure exits with 3."""

        def diverge(*args, **kwargs):
            raise ConvergenceError("did not converge", iterate=np.zeros(2), gradient_norm=1.0)

        monkeypatch.setattr(cli, "equilibrium", diverge)

        assert main(["equilibrium", "--out", str(tmp_path)]) == EXIT_NUMERICAL
        payload = json.loads((tmp_path / "error.json").read_text())
        assert payload == {"error": "ConvergenceError", "message": "did not converge", "exit_code": 3}

    @pytest.mark.parametrize(
        "error",
        [RuntimeError("boom"), np.linalg.LinAlgError("singular"), ZeroDivisionError("x")],
    )
    def test_unexpected_failure_is_numerical(self, tmp_path, monkeypatch, error):
        """Test that an exception outside the package hierarchy exits with 3 and is reported."""

        def crash(*args, **kwargs):
            raise error

        monkeypatch.setattr(cli, "equilibrium", crash)

        assert main(["equilibrium", "--out", str(tmp_path)]) == EXIT_NUMERICAL
        payload = json.loads((tmp_path / "error.json").read_text())
        assert payload["error"] == type(error).__name__
        assert payload["exit_code"] == EXIT_NUMERICAL

    def test_missing_manifest_is_config_error(self, tmp_path, output_dir):
        """Test that an unreadable or malformed manifest exits with 2."""
        broken = tmp_path / "manifest.json"
        broken.write_text("{not json")

        assert main(["--from-manifest", str(tmp_path / "absent.json")]) == EXIT_CONFIG
        assert main(["--from-manifest", str(broken)]) == EXIT_CONFIG
        payload = json.loads((output_dir / "error.json").read_text())
        assert payload["error"] == "ParameterDomainError"

    def test_exit_code_mapping(self):
        """Test the exception to status mapping."""
        assert exit_code(ParameterDomainError("x")) == EXIT_CONFIG
        assert exit_code(ConvergenceError("x")) == EXIT_NUMERICAL
        assert exit_code(OSError("x")) == EXIT_NUMERICAL
        assert exit_code(RuntimeError("x")) == EXIT_NUMERICAL

    def test_version(self, capsys):
        """Test that --version prints and exits."""
        with pytest.raises(SystemExit):
            main(["--version"])

        assert "loggas" in capsys.readouterr().out


class TestRunConfig:
    """Tests for RunConfig validation."""

    def test_unknown_field_rejected(self):
        """Test that extra keys are refused."""
        with pytest.raises(ValueError):
            RunConfig(command="sample", colour="red")

    def test_unknown_check_rejected(self):
        """Test that check names are validated."""
        with pytest.raises(ValueError):
            RunConfig(command="check", checks=["nope"])

    def test_seed_filled(self):
        """Test that a seed is always present after validation."""
        assert RunConfig(command="sample").seed is not None

"""Tests for Gaussian ensembles and the eigenvalue joint density."""

import numpy as np
import pytest

from loggas.Electrostatics.base import equilibrium
from loggas.Ensembles.base import (
    SpectrumSample,
    factorized_pdf,
    gaussian_matrix,
    joint_log_pdf,
    product_wavefunction,
    sample_gaussian,
    sample_many,
)
from loggas.exceptions import ParameterDomainError
from loggas.OrthoPoly.base import PolynomialFamily


class TestSampling:
    """Tests for sample_gaussian and sample_many."""

    @pytest.mark.parametrize("beta", [1, 2])
    def test_sorted_and_sized(self, beta):
        """Test ascending eigenvalues of the requested length."""
        s = sample_gaussian(6, beta, seed=11)

        assert isinstance(s, SpectrumSample)
        assert s.eigenvalues.shape == (6,)
        assert np.all(np.diff(s.eigenvalues) >= 0)

    def test_seed_reproduces(self):
        """Test that one seed gives identical eigenvalues."""
        a = sample_gaussian(5, 2, seed=7)
        b = sample_gaussian(5, 2, seed=7)

        assert np.array_equal(a.eigenvalues, b.eigenvalues)
        assert not np.array_equal(a.eigenvalues, sample_gaussian(5, 2, seed=8).eigenvalues)

    def test_seed_recorded(self):
        """Test that an omitted seed is drawn and recorded."""
        s = sample_gaussian(3, 1)

        assert isinstance(s.seed, int)
        assert np.array_equal(sample_gaussian(3, 1, seed=s.seed).eigenvalues, s.eigenvalues)

    def test_workers_do_not_change_output(self):
        """Test that sample i uses stream i for any worker count."""
        serial = sample_many(4, 1, 10, seed=3)
        pooled = sample_many(4, 1, 10, seed=3, workers=3)

        assert [s.stream for s in pooled] == list(range(10))
        for a, b in zip(serial, pooled):
            assert np.array_equal(a.eigenvalues, b.eigenvalues)

    def test_matrix_symmetry(self):
        """Test real symmetric and complex Hermitian draws."""
        rng = np.random.default_rng(0)
        goe = gaussian_matrix(4, 1, rng)
        gue = gaussian_matrix(4, 2, rng)

        assert np.isrealobj(goe) and np.allclose(goe, goe.T)
        assert np.iscomplexobj(gue) and np.allclose(gue, gue.conj().T)

    def test_bad_arguments(self):
        """Test beta = 4 sampling, dim < 1 and count < 1."""
        with pytest.raises(ParameterDomainError):
            sample_gaussian(3, 4, seed=1)
        with pytest.raises(ParameterDomainError):
            sample_gaussian(0, 1, seed=1)
        with pytest.raises(ParameterDomainError):
            sample_many(3, 1, 0, seed=1)

    @pytest.mark.slow
    def test_one_by_one_goe_moments(self):
        """Test mean and variance of the 1x1 GOE entry over 10**5 draws."""
        x = np.array([s.eigenvalues[0] for s in sample_many(1, 1, 100_000, seed=2024)])

        assert abs(x.mean()) < 0.02
        assert x.var() == pytest.approx(1.0, rel=0.05)

    @pytest.mark.slow
    def test_two_by_two_goe_mean_spacing(self):
        """Test the 2x2 GOE mean spacing against sqrt(pi) over 10**5 draws."""
        gaps = np.array([np.diff(s.eigenvalues)[0] for s in sample_many(2, 1, 100_000, seed=99)])

        assert gaps.mean() == pytest.approx(np.sqrt(np.pi), rel=0.02)


class TestJointLogPdf:
    """Tests for joint_log_pdf."""

    def test_examples(self):
        """Test the single-entry and two-entry values."""
        assert float(joint_log_pdf([0.0], 2, lambda x: x**2)) == 0.0
        value = joint_log_pdf([-1.0, 1.0], 2, lambda x: x**2)
        assert float(value) == pytest.approx(-2.0 * (2.0 - np.log(2.0)))
        assert float(value) == pytest.approx(-2.613706, abs=1e-6)

    def test_coincident_is_singular(self):
        """Test the -inf sentinel for coincident entries."""
        value = joint_log_pdf([0.5, 0.5], 1, lambda x: x**2)

        assert value.singular
        assert float(value) == -np.inf

    def test_beta_four_accepted(self, harmonic):
        """Test that the symplectic index is evaluated."""
        assert float(joint_log_pdf([-1.0, 1.0], 4, harmonic)) == pytest.approx(-4.0 * (1.0 - np.log(2.0)))

    def test_bad_beta_and_domain(self, coulomb):
        """Test beta = 3 and entries outside the potential domain."""
        with pytest.raises(ParameterDomainError):
            joint_log_pdf([0.0, 1.0], 3, lambda x: x**2)
        with pytest.raises(ParameterDomainError):
            joint_log_pdf([-1.0, 1.0], 2, coulomb)

    def test_maximizer_is_equilibrium(self, harmonic, rng):
        """Test that perturbing the equilibrium lowers the density."""
        x = equilibrium(12, harmonic).positions
        best = float(joint_log_pdf(x, 2, harmonic))
        for _ in range(20):
            trial = np.sort(x + rng.normal(scale=1e-3, size=x.size))
            assert float(joint_log_pdf(trial, 2, harmonic)) < best


class TestFactorizedPdf:
    """Tests for factorized_pdf."""

    def test_examples(self):
        """Test the single-entry and coincident cases."""
        fam = PolynomialFamily.hermite()

        assert factorized_pdf([0.0], fam) == pytest.approx(1.0)
        assert factorized_pdf([0.3, 0.3], fam) == 0.0

    def test_ratio_is_constant(self, rng):
        """Test factorized / exp(joint_log_pdf) at beta = 1 across configurations."""
        fam = PolynomialFamily.hermite()
        configs = [[-1.0, 1.0], [-2.0, 0.5]] + [np.sort(rng.normal(size=4)) for _ in range(5)]
        ratios = []
        for x in configs:
            ratios.append(factorized_pdf(x, fam) / np.exp(float(joint_log_pdf(x, 1, lambda t: t**2 / 2))))

        assert np.allclose(ratios, ratios[0], rtol=1e-10)

    def test_out_of_interval(self):
        """Test that Laguerre entries below zero are rejected."""
        with pytest.raises(ParameterDomainError):
            factorized_pdf([-0.5, 1.0], PolynomialFamily.laguerre(0.0))


class TestProductWavefunction:
    """Tests for product_wavefunction."""

    def test_examples(self, harmonic):
        """Test the single-entry value and 2/e for (-1, 1)."""
        assert product_wavefunction([0.0], harmonic) == pytest.approx(1.0)
        assert product_wavefunction([-1.0, 1.0], harmonic) == pytest.approx(2.0 * np.exp(-1.0))
        assert product_wavefunction([-1.0, 1.0], harmonic) == pytest.approx(0.735759, abs=1e-6)

    def test_antisymmetry(self, harmonic):
        """Test that swapping two entries flips the sign."""
        x = np.array([-0.7, 0.2, 1.4])
        swapped = x[[1, 0, 2]]

        assert product_wavefunction(swapped, harmonic) == pytest.approx(-product_wavefunction(x, harmonic))

    def test_square_is_beta_two_density(self, harmonic, rng):
        """Test psi**2 / exp(joint_log_pdf(beta = 2)) is constant."""
        ratios = []
        for _ in range(6):
            x = np.sort(rng.normal(size=5))
            ratios.append(product_wavefunction(x, harmonic) ** 2 / np.exp(float(joint_log_pdf(x, 2, harmonic))))

        assert np.allclose(ratios, ratios[0], rtol=1e-10)

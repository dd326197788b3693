"""Tests for spectral statistics and the two-by-two spacing laws."""

import numpy as np
import pytest
from scipy.integrate import quad

from loggas.Ensembles.base import SpectrumSample, sample_many
from loggas.Ensembles.statistics import (
    gaussian_mean_spacing,
    gaussian_spacing_cdf,
    gaussian_spacing_law,
    mean_spacing,
    semicircle_density,
    semicircle_distance,
    spacing_law_distance,
    spectral_statistics,
    wigner_surmise,
)
from loggas.exceptions import InsufficientSamplesError, MixedEnsembleError, ParameterDomainError


class TestSpacingLaws:
    """Tests for the closed-form and quadrature spacing laws."""

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_surmise_normalized_with_unit_mean(self, beta):
        """Test that each surmise is a density with mean one."""
        mass, _ = quad(lambda s: float(wigner_surmise(s, beta)), 0.0, np.inf)
        mean, _ = quad(lambda s: s * float(wigner_surmise(s, beta)), 0.0, np.inf)

        assert mass == pytest.approx(1.0, rel=1e-8)
        assert mean == pytest.approx(1.0, rel=1e-8)

    def test_goe_mean_spacing(self):
        """Test the 2x2 GOE mean spacing sqrt(pi)."""
        assert gaussian_mean_spacing(1) == pytest.approx(np.sqrt(np.pi), rel=1e-8)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_unfolded_law_is_surmise(self, beta):
        """Test that rescaling the quadrature law by its mean gives the surmise."""
        m = gaussian_mean_spacing(beta)
        s = np.linspace(0.0, 3.0, 31)

        assert np.allclose(m * gaussian_spacing_law(m * s, beta), wigner_surmise(s, beta), atol=1e-8)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_cdf_integrates_quadrature_law(self, beta):
        """Test the spacing distribution function against quadrature of the density."""
        for s in (0.3, 1.0, 2.2, 4.0):
            mass, _ = quad(lambda t: float(gaussian_spacing_law(t, beta)), 0.0, s)

            assert float(gaussian_spacing_cdf(s, beta)) == pytest.approx(mass, rel=1e-8)
        assert gaussian_spacing_cdf(-1.0, beta) == 0.0

    def test_negative_spacing_is_zero(self):
        """Test that the laws vanish for s < 0."""
        assert gaussian_spacing_law(-1.0) == 0.0
        assert wigner_surmise(-1.0) == 0.0

    def test_bad_beta(self):
        """Test that beta = 3 is rejected."""
        with pytest.raises(ParameterDomainError):
            wigner_surmise(1.0, 3)


class TestSpectralStatistics:
    """Tests for spectral_statistics."""

    def test_single_one_by_one_sample(self):
        """Test that a lone 1x1 spectrum gives degenerate histograms."""
        stats = spectral_statistics([SpectrumSample(1, 1, np.array([0.4]), seed=1)])

        assert stats.density.counts.tolist() == [1]
        assert stats.density.density.tolist() == [1.0]
        assert stats.spacing.normalization == "empty"
        assert np.isnan(stats.mean_spacing)

    def test_deterministic(self):
        """Test that the same samples give the same histograms."""
        samples = sample_many(8, 2, 120, seed=5)
        a = spectral_statistics(samples, bins=20)
        b = spectral_statistics(samples, bins=20)

        assert np.array_equal(a.density.counts, b.density.counts)
        assert np.array_equal(a.spacing.counts, b.spacing.counts)
        assert a.density.counts.sum() == 8 * 120

    def test_histograms_are_normalized(self):
        """Test that both densities integrate to one."""
        stats = spectral_statistics(sample_many(10, 1, 150, seed=21), bins=25)

        for hist in (stats.density, stats.spacing):
            assert np.sum(hist.density * np.diff(hist.edges)) == pytest.approx(1.0)

    def test_unfolded_mean_is_one(self):
        """Test that spacings are unfolded by their own mean."""
        stats = spectral_statistics(sample_many(12, 1, 100, seed=8), bins=30)
        hist = stats.spacing

        assert np.sum(hist.centers * hist.density * np.diff(hist.edges)) == pytest.approx(1.0, rel=0.05)

    def test_mixed_and_empty_rejected(self):
        """Test mixed dimensions, mixed indices, no samples and a bad bulk fraction."""
        a = SpectrumSample(2, 1, np.array([-1.0, 1.0]))
        with pytest.raises(MixedEnsembleError):
            spectral_statistics([a, SpectrumSample(3, 1, np.array([-1.0, 0.0, 1.0]))])
        with pytest.raises(MixedEnsembleError):
            spectral_statistics([a, SpectrumSample(2, 2, np.array([-1.0, 1.0]))])
        with pytest.raises(InsufficientSamplesError):
            spectral_statistics([])
        with pytest.raises(ParameterDomainError):
            spectral_statistics([a], bulk=0.0)

    def test_to_dict_keys(self):
        """Test the histogram document written by the sample command."""
        d = spectral_statistics(sample_many(3, 1, 100, seed=1)).to_dict()

        assert {"dim", "beta", "count", "radius", "mean_spacing", "density", "spacing"} == set(d)
        assert {"bins", "counts", "density", "normalization"} == set(d["density"])

    def test_mean_spacing_needs_pairs(self):
        """Test that dimension-one samples have no spacings."""
        with pytest.raises(InsufficientSamplesError):
            mean_spacing([SpectrumSample(1, 1, np.array([0.0]))])

    def test_spacing_law_distance(self):
        """Test that 2x2 GOE spacings are close to their law and a rescaled set is not."""
        samples = sample_many(2, 1, 4000, seed=11)
        stretched = [SpectrumSample(2, 1, 1.2 * np.asarray(s.eigenvalues)) for s in samples]

        assert spacing_law_distance(samples) < 0.04
        assert spacing_law_distance(stretched) > 0.05

    def test_spacing_law_distance_needs_pairs(self):
        """Test that only homogeneous two-by-two sample sets are accepted."""
        with pytest.raises(MixedEnsembleError):
            spacing_law_distance([SpectrumSample(3, 1, np.array([-1.0, 0.0, 1.0]))])
        with pytest.raises(InsufficientSamplesError):
            spacing_law_distance([])

    def test_semicircle_density(self):
        """Test the normalized semicircle at the center and outside."""
        assert semicircle_density(0.0) == pytest.approx(2.0 / np.pi)
        assert semicircle_density(1.5) == 0.0

    @pytest.mark.slow
    def test_goe_bulk_density_is_semicircle(self):
        """Test 500 GOE spectra of size 200 against the semicircle on [-0.8, 0.8]."""
        stats = spectral_statistics(sample_many(200, 1, 500, seed=314, workers=4))

        assert semicircle_distance(stats) < 0.05

    @pytest.mark.slow
    def test_two_by_two_spacing_law(self):
        """Test 2x2 GOE spacings against the quadrature law bin by bin and in distribution."""
        samples = sample_many(2, 1, 50_000, seed=42)
        spacings = np.array([s.eigenvalues[1] - s.eigenvalues[0] for s in samples])
        counts, edges = np.histogram(spacings, bins=30, range=(0.0, 6.0))
        density = counts / (spacings.size * np.diff(edges))
        expected = np.diff(gaussian_spacing_cdf(edges, 1)) / np.diff(edges)

        assert mean_spacing(samples) == pytest.approx(gaussian_mean_spacing(1), rel=0.02)
        assert np.max(np.abs(density - expected)) < 0.03
        assert spacing_law_distance(samples) < 0.02

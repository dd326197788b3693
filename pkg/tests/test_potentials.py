"""Tests for the potential catalog, SUSY partners and variable maps."""

import json

import numpy as np
import pytest

from loggas.exceptions import ParameterDomainError, UnknownMapError, UnsupportedPotentialError
from loggas.Potentials.base import (
    PotentialName,
    Superpotential,
    load_potential,
    make_potential,
    partner_potentials,
    save_potential,
)
from loggas.Potentials.susy import (
    fokker_planck_ground_state,
    fokker_planck_potential,
    shape_invariance_residual,
    shape_invariant_spectrum,
)
from loggas.Potentials.variable_maps import variable_map


class TestMakePotential:
    """Tests for make_potential and PotentialSpec."""

    def test_harmonic_closed_form(self, harmonic):
        """Test W = x, V = x**2 and E0 = 1 for the oscillator."""
        x = np.array([-1.5, 0.0, 0.5, 2.0])

        assert np.allclose(harmonic.W(x), x)
        assert np.allclose(harmonic.V(x), x**2)
        assert harmonic.E0 == 1.0

    def test_coulomb_superpotential(self, coulomb):
        """Test W = 1/2 - 1/r for Coulomb with l = 0."""
        r = np.array([0.5, 1.0, 2.0, 5.0])

        assert np.allclose(coulomb.W(r), 0.5 - 1.0 / r)
        assert coulomb.E0 == pytest.approx(-0.25)
        assert coulomb.domain == (0.0, np.inf)

    def test_coulomb_negative_l_rejected(self):
        """Test that l = -1 is a parameter-domain error."""
        with pytest.raises(ParameterDomainError):
            make_potential("Coulomb", l=-1)

    def test_rejects_bad_parameters(self):
        """Test unknown names, unknown parameters and alpha <= 0."""
        with pytest.raises(ParameterDomainError):
            make_potential("Yukawa")
        with pytest.raises(ParameterDomainError):
            make_potential("HarmonicOscillator", l=1)
        with pytest.raises(ParameterDomainError):
            make_potential("Morse", alpha=0.0)
        with pytest.raises(ParameterDomainError):
            make_potential("DeformedOscillator", g=-0.5)

    def test_aliases_resolve(self):
        """Test that CLI aliases map onto catalog names."""
        assert make_potential("harmonic").name is PotentialName.HARMONIC
        assert make_potential("oscillator_3d").name is PotentialName.OSCILLATOR_3D
        assert make_potential("deformed").name is PotentialName.DEFORMED

    @pytest.mark.parametrize("name", list(PotentialName))
    def test_partner_identity(self, name):
        """Test V - E0 = W**2 - W' on the probe grid for every entry."""
        assert make_potential(name).partner_residual() < 1e-10

    @pytest.mark.parametrize("name", list(PotentialName))
    def test_derivative_matches_finite_difference(self, name):
        """Test that V' agrees with a centered difference of V."""
        spec = make_potential(name)
        x = spec.probe_grid(32)
        h = 1e-4
        numeric = (spec.V(x + h) - spec.V(x - h)) / (2 * h)
        exact = spec.dV(x)
        assert np.max(np.abs(numeric - exact) / np.maximum(np.abs(exact), 1.0)) < 1e-6

    def test_scarf_single_branch(self):
        """Test that the Scarf domain is the branch where sin(alpha x) lies in (0, 1)."""
        spec = make_potential("Scarf", alpha=2.0)

        assert spec.domain == pytest.approx((0.0, np.pi / 4))
        assert np.all(np.isfinite(spec.V(spec.probe_grid())))


class TestPartnerPotentials:
    """Tests for partner_potentials."""

    def test_harmonic_partners(self, harmonic):
        """Test V+ = x**2 + 1 + E and V- = x**2 - 1 + E for W = x."""
        v_plus, v_minus = partner_potentials(harmonic, energy=0.5)
        x = np.linspace(-2, 2, 9)

        assert np.allclose(v_plus(x), x**2 + 1 + 0.5)
        assert np.allclose(v_minus(x), x**2 - 1 + 0.5)

    def test_v_minus_is_spec_potential(self, coulomb):
        """Test V- with E0 equals -1/r and V+ equals -1/r + 2/r**2."""
        v_plus, v_minus = partner_potentials(coulomb)
        r = np.array([1.0, 2.0, 5.0])

        assert np.allclose(v_minus(r), coulomb.V(r), atol=1e-12)
        assert np.allclose(v_minus(r), -1.0 / r, atol=1e-12)
        assert np.allclose(v_plus(r), -1.0 / r + 2.0 / r**2, atol=1e-12)

    def test_free_case(self):
        """Test that W = 0 gives constant partners."""
        v_plus, v_minus = partner_potentials(Superpotential.constant(0.0), energy=3.0)
        x = np.array([-1.0, 0.0, 4.0])

        assert np.allclose(v_plus(x), 3.0)
        assert np.allclose(v_minus(x), 3.0)


class TestSerialization:
    """Tests for save_potential and load_potential."""

    def test_round_trip(self, tmp_path):
        """Test that a saved document loads back to an equal spec."""
        spec = make_potential("Coulomb", l=2, Z=3)
        path = save_potential(spec, tmp_path / "coulomb.json")

        assert json.loads(path.read_text())["name"] == "Coulomb"
        assert load_potential(path) == spec
        assert load_potential(path.read_text()) == spec

    def test_inconsistent_document_rejected(self):
        """Test that a stored E0 disagreeing with the catalog is rejected."""
        with pytest.raises(ParameterDomainError):
            load_potential({"name": "HarmonicOscillator", "params": {}, "E0": 2.0})

    def test_malformed_documents_rejected(self, tmp_path):
        """Test that broken inline JSON and broken JSON files are parameter-domain errors."""
        path = tmp_path / "broken.json"
        path.write_text("{oops")

        with pytest.raises(ParameterDomainError):
            load_potential("{oops")
        with pytest.raises(ParameterDomainError):
            load_potential(path)

    def test_plain_name(self):
        """Test that a bare catalog name loads the default entry."""
        assert load_potential("harmonic").name is PotentialName.HARMONIC


class TestVariableMaps:
    """Tests for variable_map."""

    @pytest.mark.parametrize("name", ["Oscillator3D->Coulomb", "Morse->Coulomb", "Scarf->Coulomb"])
    def test_identity_and_monotone(self, name):
        """Test the multiplier identity and monotonicity on the probe grid."""
        vm = variable_map(name)

        assert vm.identity_residual() < 1e-10
        assert vm.is_monotone()
        assert vm.target.name is PotentialName.COULOMB

    def test_oscillator_example(self):
        """Test x = 2 maps to r = 4 with the 1/r multiplier."""
        vm = variable_map("Oscillator3D->Coulomb")

        assert vm.forward(2.0) == pytest.approx(4.0)
        assert vm.target_effective(4.0) == pytest.approx(vm.source_effective(2.0) / 4.0, abs=1e-12)

    def test_morse_origin(self):
        """Test that x = 0 maps to r = 1 for any alpha."""
        for alpha in (0.5, 1.0, 3.0):
            assert variable_map("Morse", {"alpha": alpha}).forward(0.0) == pytest.approx(1.0)

    def test_scarf_probe_points(self):
        """Test the Scarf identity at r = 2, 3, 5."""
        vm = variable_map("Scarf->Coulomb")

        assert vm.identity_residual(np.array([2.0, 3.0, 5.0])) < 1e-10

    def test_unknown_map(self):
        """Test that an unknown name raises UnknownMapError."""
        with pytest.raises(UnknownMapError):
            variable_map("Harmonic->Coulomb")


class TestShapeInvariance:
    """Tests for the SUSY hierarchy."""

    @pytest.mark.parametrize(
        "name", ["HarmonicOscillator", "Coulomb", "Oscillator3D", "Morse", "Scarf"]
    )
    def test_shape_invariance_residual(self, name):
        """Test V+(a) = V-(a1) + R(a) on the probe grid."""
        assert shape_invariance_residual(make_potential(name)) < 1e-10

    def test_harmonic_ladder(self, harmonic):
        """Test the equally spaced oscillator spectrum."""
        assert shape_invariant_spectrum(harmonic, 3) == pytest.approx([1.0, 3.0, 5.0, 7.0])

    def test_coulomb_levels(self, coulomb):
        """Test E_n = -1 / (4 (n + 1)**2) for l = 0, Z = 1."""
        expected = [-1.0 / (4 * (n + 1) ** 2) for n in range(5)]

        assert shape_invariant_spectrum(coulomb, 4) == pytest.approx(expected, abs=1e-14)

    def test_morse_stops_at_last_bound_level(self):
        """Test that Morse with A = 2, alpha = 1 has two levels."""
        assert shape_invariant_spectrum(make_potential("Morse"), 5) == pytest.approx([0.0, 3.0])

    def test_deformed_unsupported(self):
        """Test that the deformed oscillator has no shift rule."""
        with pytest.raises(UnsupportedPotentialError):
            shape_invariant_spectrum(make_potential("DeformedOscillator"), 2)

    def test_negative_n_max(self, harmonic):
        """Test that n_max < 0 is rejected."""
        with pytest.raises(ParameterDomainError):
            shape_invariant_spectrum(harmonic, -1)


class TestFokkerPlanck:
    """Tests for the Fokker-Planck Schrödinger form."""

    @pytest.mark.parametrize("name", ["HarmonicOscillator", "Coulomb", "Oscillator3D"])
    def test_beta_two_is_susy_form(self, name):
        """Test V_s = (V - E0) / 2 at beta = 2."""
        spec = make_potential(name)
        x = spec.probe_grid()

        assert np.allclose(fokker_planck_potential(spec, 2.0)(x), 0.5 * (spec.V(x) - spec.E0))

    def test_ground_state_is_zero_mode(self, harmonic):
        """Test (1/beta) psi'' = V_s psi for the harmonic ground state."""
        beta, h = 1.0, 1e-4
        psi = fokker_planck_ground_state(harmonic, beta)
        v_s = fokker_planck_potential(harmonic, beta)
        x = np.linspace(-2, 2, 21)
        second = (psi(x + h) - 2 * psi(x) + psi(x - h)) / h**2

        assert np.max(np.abs(second / beta - v_s(x) * psi(x))) < 1e-6

    def test_rejects_nonpositive_beta(self, harmonic):
        """Test that beta <= 0 is rejected."""
        with pytest.raises(ParameterDomainError):
            fokker_planck_potential(harmonic, 0.0)

"""Tests for the quantization contour integral and the Burgers residual."""

import numpy as np
import pytest

from loggas.Dyson.poles import pole_dynamics
from loggas.Electrostatics.base import equilibrium
from loggas.exceptions import ContourGeometryError, ParameterDomainError, PoleCollisionError
from loggas.QHJ.base import polynomial_spectrum
from loggas.QHJ.contour import Rectangle, berry_phase, burgers_residual, contour_integral, quantization_integral


class TestRectangle:
    """Tests for Rectangle geometry."""

    def test_degenerate_rejected(self):
        """Test that an empty rectangle is a geometry error."""
        with pytest.raises(ContourGeometryError):
            Rectangle(1.0, 1.0, -1.0, 1.0)

    def test_around_and_distance(self):
        """Test padding and boundary distances."""
        box = Rectangle.around([-1.0, 2.0 + 1.0j], margin=0.5)

        assert (box.x_min, box.x_max, box.y_min, box.y_max) == (-1.5, 2.5, -0.5, 1.5)
        assert box.distance(0.0) == pytest.approx(0.5)
        assert box.distance(4.0) == pytest.approx(1.5)
        assert box.perimeter == pytest.approx(12.0)

    def test_contour_integral_of_simple_pole(self):
        """Test ∮ dz / z = 2πi around the origin."""
        value = contour_integral(lambda z: 1.0 / z, lambda z: -1.0 / z**2, Rectangle(-1, 1, -1, 1))

        assert value == pytest.approx(2j * np.pi, abs=1e-10)


class TestQuantizationIntegral:
    """Tests for quantization_integral."""

    @pytest.fixture
    def third_state(self, harmonic):
        return polynomial_spectrum(harmonic, 3)[3]

    def test_encloses_all_poles(self, third_state):
        """Test that a box around all three nodes gives 3."""
        assert quantization_integral(third_state, Rectangle(-3, 3, -1, 1)) == pytest.approx(3.0, abs=1e-6)

    def test_encloses_one_pole(self, third_state):
        """Test that a box around the middle node gives 1."""
        assert quantization_integral(third_state, Rectangle(-0.5, 0.5, -0.5, 0.5)) == pytest.approx(1.0, abs=1e-6)

    def test_encloses_nothing(self, third_state):
        """Test that a box clear of the real axis gives 0."""
        assert quantization_integral(third_state, Rectangle(-1, 1, 1, 2)) == pytest.approx(0.0, abs=1e-6)

    def test_deformation_invariance(self, third_state):
        """Test that nested rectangles around the same poles agree."""
        inner = quantization_integral(third_state, Rectangle(-1.5, 1.5, -0.3, 0.3))
        outer = quantization_integral(third_state, Rectangle(-4.0, 5.0, -2.0, 3.0))

        assert inner == pytest.approx(outer, abs=1e-6)

    def test_pole_on_contour(self, third_state):
        """Test that a contour through a node is a geometry error."""
        with pytest.raises(ContourGeometryError):
            quantization_integral(third_state, Rectangle(0.0, 1.0, -1.0, 1.0))

    def test_fixed_singularity_inside(self, coulomb):
        """Test that enclosing r = 0 is rejected for Coulomb."""
        state = polynomial_spectrum(coulomb, 2)[2]
        with pytest.raises(ContourGeometryError):
            quantization_integral(state, Rectangle(-1.0, 20.0, -1.0, 1.0))

    def test_coulomb_nodes(self, coulomb):
        """Test a Coulomb contour that avoids the origin."""
        state = polynomial_spectrum(coulomb, 2)[2]
        box = Rectangle(0.5 * state.nodes[0], state.nodes[-1] + 1.0, -1.0, 1.0)

        assert quantization_integral(state, box) == pytest.approx(2.0, abs=1e-6)

    def test_berry_phase_alias(self, third_state):
        """Test that berry_phase is the same integral."""
        assert berry_phase is quantization_integral

    def test_bad_node_count(self, third_state):
        """Test that fewer than two nodes per edge is rejected."""
        with pytest.raises(ParameterDomainError):
            quantization_integral(third_state, Rectangle(-3, 3, -1, 1), nodes=1)


class TestBurgersResidual:
    """Tests for burgers_residual."""

    def test_stationary_equilibrium(self, harmonic):
        """Test that equilibrium poles with W = x leave no residual."""
        poles = equilibrium(4, harmonic).positions
        for dt in (1e-2, 1e-4):
            assert burgers_residual([poles, poles], harmonic.superpotential, dt=dt) < 1e-8

    def test_free_two_poles(self):
        """Test one RK4 step of the free dynamics at dt = 1e-4."""
        trajectory = pole_dynamics([-1.0, 1.0], dt=1e-4, steps=1)

        assert burgers_residual(trajectory, dt=1e-4) < 1e-2

    def test_first_order_in_dt(self):
        """Test that halving dt roughly halves the residual."""
        coarse = burgers_residual(pole_dynamics([-1.0, 1.0], dt=2e-3, steps=1), dt=2e-3)
        fine = burgers_residual(pole_dynamics([-1.0, 1.0], dt=1e-3, steps=1), dt=1e-3)

        assert 1.6 < coarse / fine < 2.4

    def test_collision_and_bad_input(self):
        """Test coincident poles, dt <= 0 and a single slice."""
        with pytest.raises(PoleCollisionError):
            burgers_residual([np.array([0.5, 0.5]), np.array([0.4, 0.6])], dt=1e-3)
        with pytest.raises(ParameterDomainError):
            burgers_residual([np.array([0.0]), np.array([0.0])], dt=0.0)
        with pytest.raises(ParameterDomainError):
            burgers_residual([np.array([0.0])], dt=1e-3)

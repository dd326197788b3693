"""Tests for complex pole dynamics."""

import numpy as np
import pytest

from loggas.Dyson.poles import pole_dynamics, pole_velocity, two_body_solution
from loggas.Electrostatics.base import equilibrium
from loggas.exceptions import ParameterDomainError, PoleCollisionError


class TestPoleDynamics:
    """Tests for pole_dynamics."""

    def test_equilibrium_is_fixed(self, harmonic):
        """Test that real equilibrium poles stay put for 10**3 steps."""
        x0 = equilibrium(4, harmonic).positions
        traj = pole_dynamics(x0, harmonic.superpotential, dt=1e-3, steps=1000)

        assert np.max(np.abs(traj[-1].poles - x0)) < 1e-9

    def test_free_two_body(self):
        """Test symmetric free poles against sqrt(x0**2 + i t)."""
        traj = pole_dynamics([-1.0, 1.0], dt=1e-3, steps=1000)
        last = traj[-1]

        assert last.time == pytest.approx(1.0)
        assert abs(last.poles[0] + last.poles[1]) < 1e-12
        assert abs(last.poles[1] - two_body_solution(1.0, last.time)) < 1e-6

    def test_fourth_order(self):
        """Test that halving dt cuts the terminal error about sixteenfold."""
        exact = two_body_solution(1.0, 1.0)
        coarse = abs(pole_dynamics([-1.0, 1.0], dt=0.1, steps=10)[-1].poles[1] - exact)
        fine = abs(pole_dynamics([-1.0, 1.0], dt=0.05, steps=20)[-1].poles[1] - exact)

        assert 10.0 < coarse / fine < 22.0

    def test_centroid_conserved(self):
        """Test that the pole sum is constant when Q = 0."""
        x0 = np.array([-1.3, -0.2 + 0.4j, 0.5, 1.8 - 0.3j])
        traj = pole_dynamics(x0, dt=1e-3, steps=500)

        for state in traj:
            assert abs(state.poles.sum() - x0.sum()) < 1e-12

    def test_velocity_at_equilibrium(self, coulomb):
        """Test that the pole velocity vanishes at the log-gas equilibrium."""
        x = equilibrium(5, coulomb).positions

        assert np.max(np.abs(pole_velocity(x, coulomb.superpotential))) < 1e-10

    def test_record_every(self):
        """Test thinning of the recorded states."""
        traj = pole_dynamics([-1.0, 1.0], dt=1e-2, steps=10, record_every=5)

        assert [s.time for s in traj] == pytest.approx([0.0, 0.05, 0.1])

    def test_collision_and_bad_arguments(self):
        """Test coincident initial poles and invalid step settings."""
        with pytest.raises(PoleCollisionError) as info:
            pole_dynamics([0.5, 0.5])
        assert info.value.time == 0.0
        with pytest.raises(ParameterDomainError):
            pole_dynamics([0.0, 1.0], dt=0.0)
        with pytest.raises(ParameterDomainError):
            pole_dynamics([0.0, 1.0], record_every=0)

"""Shared fixtures for loggas tests."""

import numpy as np
import pytest

from loggas.Potentials.base import make_potential


@pytest.fixture
def harmonic():
    """Harmonic oscillator, W = x."""
    return make_potential("HarmonicOscillator")


@pytest.fixture
def coulomb():
    """Coulomb with l = 0, Z = 1, W = 1/2 - 1/r."""
    return make_potential("Coulomb", l=0)


@pytest.fixture
def rng():
    """Seeded generator for random configurations."""
    return np.random.default_rng(12345)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Output directory exported as LOGGAS_OUTPUT_DIR."""
    out = tmp_path / "out"
    monkeypatch.setenv("LOGGAS_OUTPUT_DIR", str(out))
    monkeypatch.delenv("LOGGAS_WORKERS", raising=False)
    return out

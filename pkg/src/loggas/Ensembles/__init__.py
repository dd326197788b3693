"""
Ensembles module for loggas.

Random-matrix layer:

- :func:`sample_gaussian` / :func:`sample_many` -- seeded GOE and GUE
  spectra as :class:`SpectrumSample`.
- :func:`joint_log_pdf`, :func:`factorized_pdf` and
  :func:`product_wavefunction` -- the eigenvalue density in its three forms.
- :func:`spectral_statistics` -- density and spacing histograms, with the
  semicircle and the two-by-two spacing law as references.
"""

from loggas.Ensembles.base import (
    LogDensity,
    SpectrumSample,
    factorized_pdf,
    gaussian_matrix,
    joint_log_pdf,
    product_wavefunction,
    sample_gaussian,
    sample_many,
)
from loggas.Ensembles.statistics import (
    Histogram,
    SpectralStatistics,
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

__all__ = [
    "SpectrumSample",
    "LogDensity",
    "gaussian_matrix",
    "sample_gaussian",
    "sample_many",
    "joint_log_pdf",
    "factorized_pdf",
    "product_wavefunction",
    "Histogram",
    "SpectralStatistics",
    "spectral_statistics",
    "semicircle_density",
    "semicircle_distance",
    "gaussian_spacing_law",
    "gaussian_spacing_cdf",
    "spacing_law_distance",
    "gaussian_mean_spacing",
    "wigner_surmise",
    "mean_spacing",
]

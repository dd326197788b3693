"""
Error hierarchy for loggas.

Every error raised by the package derives from :class:`LogGasError` and
also from the builtin exception that describes it best, so callers may
catch either ``ValueError`` or the package-specific class.

The CLI (:mod:`loggas.cli`) maps these onto exit codes: configuration
problems (``ValueError`` family) exit with ``2``, any other
:class:`LogGasError` with ``3``.
"""

from typing import Optional

import numpy as np


class LogGasError(Exception):
    """Base class for all loggas errors."""


class ParameterDomainError(LogGasError, ValueError):
    """A parameter lies outside its validity range."""


class UnknownMapError(ParameterDomainError):
    """Requested a change of variable that is not in the catalog."""


class SingularConfigurationError(LogGasError, ValueError):
    """Two charges (or roots) coincide, so a logarithm diverges."""


class ConvergenceError(LogGasError, RuntimeError):
    """An iterative solver stopped before reaching its tolerance.

    Attributes:
        iterate: The last iterate the solver produced.
        gradient_norm: Max-norm of the gradient at ``iterate``.
    """

    def __init__(
        self,
        message: str,
        iterate: Optional[np.ndarray] = None,
        gradient_norm: float = float("nan"),
    ):
        super().__init__(message)
        self.iterate = iterate
        self.gradient_norm = gradient_norm


class QuantizationError(LogGasError, RuntimeError):
    """No polynomial solution exists at the requested degree."""


class UnsupportedPotentialError(LogGasError, NotImplementedError):
    """The operation is not defined for this catalog entry."""


class ContourGeometryError(LogGasError, ValueError):
    """A contour passes too close to a pole or encloses a fixed singularity."""


class PoleCollisionError(LogGasError, RuntimeError):
    """Two moving poles met during integration.

    Attributes:
        time: Integration time at which the collision was detected.
    """

    def __init__(self, message: str, time: float):
        super().__init__(message)
        self.time = time


class StepUnderflowError(LogGasError, RuntimeError):
    """Step halving reached ``dt_min`` without an admissible step."""


class InsufficientSamplesError(LogGasError, ValueError):
    """Too few pooled points for a statistical comparison."""


class MixedEnsembleError(LogGasError, ValueError):
    """Samples with different dimension or Dyson index were combined."""


class OutOfIntervalWarning(UserWarning):
    """A polynomial was evaluated outside its natural interval."""

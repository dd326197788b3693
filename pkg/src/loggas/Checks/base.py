"""
Base classes for cross-validation checks.

Provides the :class:`Check` class that wraps a numerical experiment with a
JSON schema of its parameters, and :func:`check_from_function` to derive a
Check from a function taking a single Pydantic parameter model.

A check function returns a :class:`CheckOutcome`; :meth:`Check.execute`
never raises and reports failures as :class:`CheckResult` objects.
"""

import inspect
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

from pydantic import BaseModel


@dataclass
class CheckOutcome:
    """What a check function returns.

    Attributes:
        passed: Whether the acceptance criterion holds.
        metrics: Numbers backing the verdict (worst residual, KS distance, ...).
    """

    passed: bool
    metrics: Dict[str, Any] = field(default_factory=dict)


@dataclass
class CheckResult:
    """Result of running one check.

    Attributes:
        name: Check name.
        success: Whether the check ran without raising.
        passed: Whether it ran and met its criterion.
        metrics: Reported numbers.
        error: Error message if ``success`` is ``False``.
        elapsed: Wall time in seconds.

    Example::

        res = CheckResult(name="stieltjes_identity", success=True, passed=True,
                          metrics={"max_residual": 3e-15})
        res.to_dict()["passed"]      # True
    """

    name: str
    success: bool
    passed: bool
    metrics: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert the result to a dict; ``error`` only appears when set."""
        result = {
            "name": self.name,
            "success": self.success,
            "passed": self.passed,
            "metrics": self.metrics,
            "elapsed": self.elapsed,
        }
        if self.error:
            result["error"] = self.error
        return result


class Check:
    """A named, parameterized numerical check.

    Attributes:
        name: Check name.
        description: What the check verifies.
        parameters: JSON Schema of the accepted parameters.
        function: Callable taking keyword parameters and returning a
            :class:`CheckOutcome`.
    """

    def __init__(self, name: str, description: str, parameters: Dict, function: Callable):
        self.name = name
        self.description = description
        self.parameters = parameters
        self.function = function

    def to_dict(self) -> Dict:
        """Name, description and parameter schema."""
        return {
            "name": self.name,
            "description": self.description,
            "parameters": self.parameters,
        }

    def execute(self, **kwargs) -> CheckResult:
        """Run the check.

        Returns:
            A :class:`CheckResult`; exceptions become ``success=False``.
        """
        start = time.perf_counter()
        try:
            outcome = self.function(**kwargs)
            return CheckResult(
                name=self.name,
                success=True,
                passed=bool(outcome.passed),
                metrics=dict(outcome.metrics),
                elapsed=time.perf_counter() - start,
            )
        except Exception as e:
            return CheckResult(
                name=self.name,
                success=False,
                passed=False,
                error=f"{type(e).__name__}: {e}",
                elapsed=time.perf_counter() - start,
            )


def check_from_function(func: Callable) -> Check:
    """
    Create a Check from a function with a Pydantic parameter annotation.

    Args:
        func: Function with a single Pydantic ``BaseModel`` parameter,
            returning a :class:`CheckOutcome`.

    Returns:
        A :class:`Check` named after *func*.

    Raises:
        ValueError: If *func* does not take exactly one Pydantic model.

    Example::

        class ResidualParams(BaseModel):
            tol: float = Field(default=1e-10, gt=0)

        def tiny_residual(params: ResidualParams) -> CheckOutcome:
            \"\"\"Residual below tolerance.\"\"\"
            return CheckOutcome(passed=0.0 < params.tol)

        check = check_from_function(tiny_residual)
        check.execute(tol=1e-12).passed     # True
    """
    sig = inspect.signature(func)
    params = list(sig.parameters.values())
    if len(params) != 1:
        raise ValueError(
            f"Function {func.__name__} must have exactly one parameter (Pydantic model)"
        )
    param_type = params[0].annotation
    if not (inspect.isclass(param_type) and issubclass(param_type, BaseModel)):
        raise ValueError(f"Parameter must be a Pydantic BaseModel, got {param_type}")

    schema = param_type.model_json_schema()
    parameters = {
        "type": "object",
        "properties": schema.get("properties", {}),
        "required": schema.get("required", []),
    }

    def wrapper(**kwargs):
        return func(param_type(**kwargs))

    check = Check(
        name=func.__name__,
        description=inspect.cleandoc(func.__doc__ or f"Run {func.__name__}"),
        parameters=parameters,
        function=wrapper,
    )
    check._param_type = param_type
    return check

"""
Checks module for loggas.

Named cross-validation experiments with Pydantic parameter schemas:

- :class:`Check` and :func:`check_from_function` -- wrap a function as a
  check that never raises.
- :data:`CHECKS` and :func:`run_suite` -- the acceptance suite.
"""

from loggas.Checks.base import Check, CheckOutcome, CheckResult, check_from_function
from loggas.Checks.suite import CHECKS, report_rows, run_suite

__all__ = [
    "Check",
    "CheckOutcome",
    "CheckResult",
    "check_from_function",
    "CHECKS",
    "run_suite",
    "report_rows",
]

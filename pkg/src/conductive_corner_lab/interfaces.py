"""Shared result types

Status values and the CheckResult record used by structure checkers,
threshold helpers and experiment reports.
"""

from dataclasses import dataclass, field
from enum import Enum


class CheckStatus(str, Enum):
    """Outcome of a check or a thresholded metric"""

    PASS = "PASS"  # Invariant holds / metric clearly above threshold
    WARN = "WARN"  # Holds, but close to a tolerance
    FAIL = "FAIL"  # Invariant violated / metric below threshold
    ERROR = "ERROR"  # Computation failed; recorded, not judged


@dataclass
class CheckResult:
    """Result of a single check

    Attributes:
        name: Clause identifier (e.g., "nesting", "partition_union")
        passed: Whether the check passed
        status: CheckStatus (FAIL when passed is False)
        reason: Explanation if failed
        details: Additional details (indices, measured distances, ...)
    """

    name: str
    passed: bool
    status: CheckStatus = CheckStatus.PASS
    reason: str = ""
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization"""
        return {
            "name": self.name,
            "passed": self.passed,
            "status": self.status.value,
            "reason": self.reason,
            "details": self.details,
        }


def failed(name: str, reason: str, **details) -> CheckResult:
    """Shorthand for a failing CheckResult"""
    return CheckResult(
        name=name,
        passed=False,
        status=CheckStatus.FAIL,
        reason=reason,
        details=details,
    )


def passed(name: str, **details) -> CheckResult:
    """Shorthand for a passing CheckResult"""
    return CheckResult(name=name, passed=True, details=details)

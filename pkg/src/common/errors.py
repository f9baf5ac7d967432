"""Exception hierarchy shared by every alcove-calculus module.

Each class carries the process exit code the CLI maps it to. Library code
raises these and never prints; only ``src.main`` turns them into output.
"""

from typing import Any, Dict, Optional


class AlcalcError(Exception):
    """Base class for all errors raised by the package."""

    exit_code = 1

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details
        for key, value in details.items():
            setattr(self, key, value)

    @property
    def name(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        """Render the error for JSON output."""
        payload: Dict[str, Any] = {"error": self.name, "message": self.message}
        for key, value in self.details.items():
            payload[key] = list(value) if isinstance(value, tuple) else value
        return payload

    def __str__(self) -> str:
        return f"{self.name}: {self.message}"


# --- domain errors (exit 1) -------------------------------------------------

class DomainError(AlcalcError):
    exit_code = 1


class UnknownType(DomainError):
    pass


class RankCapExceeded(DomainError):
    pass


class DimensionMismatch(DomainError):
    pass


class NotAPositiveRoot(DomainError):
    pass


class NotAWallReflection(DomainError):
    pass


class PTooSmall(DomainError):
    pass


class NotPrime(DomainError):
    pass


class StandardAssumptionViolated(DomainError):
    pass


class InvalidLevi(DomainError):
    pass


class WallPoint(DomainError):
    pass


class FixedPoint(DomainError):
    pass


class NotInCI(DomainError):
    pass


class NoSuchWeight(DomainError):
    pass


class BoundExceeded(DomainError):
    pass


class WrongBlock(DomainError):
    pass


class WrongBasis(DomainError):
    pass


class NegativeCoefficient(DomainError):
    pass


class NotIntegral(DomainError):
    pass


class NotDominant(DomainError):
    pass


class NotRegular(DomainError):
    pass


class PeelFailed(DomainError):
    pass


class MissingEntry(DomainError):
    pass


class NotDivisible(DomainError):
    pass


class ParseError(DomainError):
    pass


# --- verification failures (exit 2) -----------------------------------------

class VerificationError(AlcalcError):
    exit_code = 2


class CheckFailed(VerificationError):
    pass


class FormulaMismatch(VerificationError):
    pass


class InvariantViolation(VerificationError):
    pass


# --- usage (exit 64) ---------------------------------------------------------

class UsageError(AlcalcError):
    exit_code = 64


def exit_code_for(error: Optional[BaseException]) -> int:
    """Map an exception (or None for success) to a process exit code."""
    if error is None:
        return 0
    if isinstance(error, AlcalcError):
        return error.exit_code
    return 1

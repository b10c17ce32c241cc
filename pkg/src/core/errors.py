"""
Exception family for Bratteli Kit.

Every error carries the CLI exit code it maps to and can describe itself as a
JSON-ready dict for the stderr channel.
"""

from typing import Any, Dict

from ..config.constants import (
    EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_TOLERANCE, EXIT_VALIDATION,
)


class BratteliKitError(Exception):
    """Base class for all library errors."""
    exit_code = EXIT_ERROR

    def __init__(self, message: str = "", **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "error": type(self).__name__,
            "message": self.message,
            "exitCode": self.exit_code,
        }
        for key, value in self.details.items():
            if isinstance(value, (str, int, float, bool, list, dict)) or value is None:
                doc[key] = value
            else:
                doc[key] = repr(value)
        return doc


class ValidationFailure(BratteliKitError):
    exit_code = EXIT_VALIDATION


class TailPolicyFail(ValidationFailure):
    """An ExplicitWindow source with the Fail tail was asked past its window."""


class DimensionMismatch(ValidationFailure, ValueError):
    """Adjacent matrices whose shapes do not chain."""


class ZeroPairing(ValidationFailure):
    pass


class NeedsPositiveWeights(ValidationFailure):
    pass


class EpsilonTooLarge(ValidationFailure):
    pass


class UnknownBundle(ValidationFailure):
    pass


class NeedsDepth(BratteliKitError):
    """The observed prefix is maximal (or minimal) through the depth budget."""
    exit_code = EXIT_TOLERANCE

    def __init__(self, message: str = "", step: int = 0, partial=None, **details: Any):
        super().__init__(message, step=step, **details)
        self.step = step
        self.partial = partial if partial is not None else []


class MaximalPath(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class MinimalPath(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class NotPrimitive(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class DegenerateCone(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class NotCauchy(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class EmptyG0(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class DeltaUnknown(BratteliKitError):
    exit_code = EXIT_TOLERANCE


class ToleranceViolation(BratteliKitError):
    exit_code = EXIT_TOLERANCE

    def __init__(self, message: str = "", deviation: float = 0.0, tol: float = 0.0, **details: Any):
        super().__init__(message, deviation=deviation, tol=tol, **details)
        self.deviation = deviation
        self.tol = tol


class InconclusiveStrict(BratteliKitError):
    exit_code = EXIT_INCONCLUSIVE

"""
Error types for hapticstroke

Every error carries the process exit status the CLI should return for it.
"""
from typing import Optional


class HapticStrokeError(Exception):
    """Base class for all hapticstroke errors"""
    exit_code = 1


class ConfigError(HapticStrokeError):
    """Malformed or unknown configuration, bad CLI tokens"""
    exit_code = 2


class RecordParseError(ConfigError):
    """A line of a plan or rating log could not be parsed"""

    def __init__(self, path: str, line_number: int, reason: str):
        self.path = path
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"{path}:{line_number}: {reason}")


class DomainError(HapticStrokeError):
    """Input outside the mathematical or physical domain of an operation"""
    exit_code = 3


class GeometryError(DomainError):
    """Tactor geometry that cannot make and break skin contact"""


class ParameterError(DomainError):
    """Actuation or simulation parameters violating their invariants"""


class DegenerateSampleError(DomainError):
    """Sample too small or without variance for a t-test"""


class RatingValidationError(DomainError):
    """Likert rating outside its scale"""

    def __init__(self, field: str, value, allowed: str):
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r} is outside {allowed}")


class InstabilityError(HapticStrokeError):
    """Closed-loop simulation diverged"""
    exit_code = 4

    def __init__(self, first_divergence_time: float, motor: Optional[int] = None):
        self.first_divergence_time = first_divergence_time
        self.motor = motor
        where = f" on motor {motor}" if motor is not None else ""
        super().__init__(
            f"tracking diverged{where}: |error| > 2pi from t={first_divergence_time:.4f} s for 0.5 s"
        )


class TrackingFailure(HapticStrokeError):
    """Tracking error exceeded the configured tolerance"""
    exit_code = 4


class ArtifactIOError(HapticStrokeError):
    """Reading or writing an output artifact failed"""
    exit_code = 5

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")

"""
Unit conversions and exact pi-fraction tokens for angular velocities

Tokens look like "2pi", "4pi/3", "pi", "0.8pi" or a plain float in rad/s.
"""
import math
import re
from fractions import Fraction

from ..lib.errors import ConfigError

MOTOR_SPEED_CAP_RPM = 92.0

# Five rotation speeds used in both user studies (periods 1, 1.5, 2, 2.5, 3 s)
STUDY_ANGULAR_VELOCITIES = (
    2 * math.pi,
    4 * math.pi / 3,
    math.pi,
    4 * math.pi / 5,
    2 * math.pi / 3,
)

STUDY_DELAY_FRACTIONS = (0.0, 0.05, 0.10, 0.15, 0.20, 0.25)

_TOKEN = re.compile(
    r"^\s*(?P<num>[0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*(?P<den>[0-9]*\.?[0-9]+))?\s*$",
    re.IGNORECASE,
)


def rpm_to_rad_s(rpm: float) -> float:
    return rpm * 2 * math.pi / 60.0


def rad_s_to_rpm(omega: float) -> float:
    return omega * 60.0 / (2 * math.pi)


MOTOR_SPEED_CAP = rpm_to_rad_s(MOTOR_SPEED_CAP_RPM)


def mm_s_to_cm_s(speed: float) -> float:
    return speed / 10.0


def parse_angular_velocity(token: str) -> float:
    """
    Parse an angular velocity token into rad/s.

    Raises:
        ConfigError: naming the offending token
    """
    text = str(token).strip()
    match = _TOKEN.match(text)
    if match:
        num = float(match.group("num")) if match.group("num") not in ("", ".") else 1.0
        den = float(match.group("den")) if match.group("den") else 1.0
        if den == 0:
            raise ConfigError(f"angular velocity token '{token}' divides by zero")
        return num * math.pi / den
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"angular velocity token '{token}' is neither a number nor a pi fraction") from None


def format_angular_velocity(omega: float, max_denominator: int = 12) -> str:
    """
    Format rad/s as an exact pi fraction when it is one ("2pi/3"), else repr(float).

    parse_angular_velocity(format_angular_velocity(w)) == w for every float w.
    """
    ratio = Fraction(omega / math.pi).limit_denominator(max_denominator)
    if ratio > 0:
        num, den = ratio.numerator, ratio.denominator
        head = "pi" if num == 1 else f"{num}pi"
        token = head if den == 1 else f"{head}/{den}"
        if parse_angular_velocity(token) == omega:
            return token
    return repr(float(omega))


def parse_delay_fraction(token: str) -> float:
    """Parse "10%", "10" (percent when > 1) or "0.10" into a fraction of a rotation"""
    text = str(token).strip()
    try:
        if text.endswith("%"):
            return float(text[:-1]) / 100.0
        value = float(text)
    except ValueError:
        raise ConfigError(f"delay token '{token}' is not a number or percentage") from None
    return value / 100.0 if value > 1.0 else value


def format_delay_percent(delay_fraction: float) -> str:
    return f"{delay_fraction * 100:g}%"

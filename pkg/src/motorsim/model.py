"""
Geared DC motor plant and PID gain sets

Physical constants are reflected to the output shaft. Gear ratio, speed cap,
current limit and control rate follow the device; inertia, damping, torque
constant and encoder resolution are plausible small-gearmotor values chosen so
the closed loop can be checked against the tracking contract.
"""
import math
from dataclasses import dataclass

from ..kinematics.units import MOTOR_SPEED_CAP
from ..lib.errors import ParameterError

ENCODER_LINES = 512  # quadrature lines per motor revolution


@dataclass(frozen=True)
class MotorModel:
    """Second-order plant: J*accel = torque_constant*i - damping*velocity"""
    gear_ratio: float = 141.0
    speed_cap: float = MOTOR_SPEED_CAP  # rad/s at the output shaft (92 RPM)
    current_limit: float = 0.010  # A
    torque_constant: float = 1.5  # N*m/A at the output
    inertia: float = 5.0e-6  # kg*m^2 reflected at the output
    damping: float = 5.0e-4  # N*m*s/rad
    encoder_counts_per_rev: int = 4 * ENCODER_LINES * 141

    def __post_init__(self):
        for name in ("gear_ratio", "speed_cap", "current_limit", "torque_constant", "inertia", "damping"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ParameterError(f"motor {name} must be positive, got {value}")
        if int(self.encoder_counts_per_rev) != self.encoder_counts_per_rev or self.encoder_counts_per_rev <= 0:
            raise ParameterError(f"encoder_counts_per_rev must be a positive integer, got {self.encoder_counts_per_rev}")

    @property
    def counts_per_radian(self) -> float:
        return self.encoder_counts_per_rev / (2 * math.pi)

    @property
    def max_acceleration(self) -> float:
        """Acceleration at the current limit from standstill (rad/s^2)"""
        return self.torque_constant * self.current_limit / self.inertia


@dataclass(frozen=True)
class PidGains:
    """Position PID from error (rad) to commanded current (A)"""
    kp: float = 0.9
    ki: float = 90.0
    kd: float = 2.667e-3
    integral_clamp: float = 0.05  # A, bound on |ki * integral|
    derivative_filter_tau: float = 5.0e-4  # s, low-pass on the measured rate

    def __post_init__(self):
        for name in ("kp", "ki", "kd", "integral_clamp", "derivative_filter_tau"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ParameterError(f"PID {name} must be non-negative, got {value}")

    @classmethod
    def open_loop(cls) -> "PidGains":
        return cls(kp=0.0, ki=0.0, kd=0.0)

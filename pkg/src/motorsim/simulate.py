"""
Closed-loop tracking simulation at the control tick

Each tick: read the incremental encoder, run the PID (derivative on the
low-passed measured rate), saturate the current, then advance the plant with
semi-implicit Euler and clamp the velocity to the speed cap. Contact load
torque is not modeled. Runs are deterministic and own all of their state.
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .model import MotorModel, PidGains
from ..kinematics import ActuationParams
from ..lib.errors import InstabilityError, ParameterError
from ..scheduler import ContactProfile, TrajectorySet
from ..scheduler.stream import angle_columns, indent_columns, indentation_matrix, write_stream

logger = logging.getLogger(__name__)

DIVERGENCE_LIMIT = 2 * math.pi  # rad
DIVERGENCE_HOLD = 0.5  # s the limit must be exceeded before a run is declared unstable


@dataclass(frozen=True)
class TrackingResult:
    """Per-tick trace of one motor"""
    reference: np.ndarray  # rad
    actual: np.ndarray  # rad
    encoder_counts: np.ndarray  # counts since start
    current: np.ndarray  # A, post-saturation
    error: np.ndarray  # reference - actual, rad
    saturated: np.ndarray  # bool, raw command beyond the limit
    dt: float

    @property
    def max_abs_error(self) -> float:
        return float(np.max(np.abs(self.error))) if self.error.size else 0.0

    @property
    def rms_error(self) -> float:
        return float(np.sqrt(np.mean(np.square(self.error)))) if self.error.size else 0.0

    @property
    def saturation_fraction(self) -> float:
        return float(np.mean(self.saturated)) if self.saturated.size else 0.0

    def summary(self) -> Dict[str, float]:
        return {
            "max_abs_error": self.max_abs_error,
            "rms_error": self.rms_error,
            "saturation_fraction": self.saturation_fraction,
        }


@dataclass(frozen=True)
class SpeedCapCheck:
    passed: bool
    margin: float  # rad/s, speed_cap - omega (negative when failing)


def validate_speed_cap(params: ActuationParams, model: MotorModel) -> SpeedCapCheck:
    """Pass iff omega <= the motor speed cap"""
    margin = model.speed_cap - params.angular_velocity
    return SpeedCapCheck(passed=margin >= 0, margin=margin)


def simulate_tracking(
    model: MotorModel,
    gains: PidGains,
    reference: np.ndarray,
    dt: float,
    initial_angle: Optional[float] = None,
) -> TrackingResult:
    """
    Track one motor's angle reference.

    The motor starts at rest at initial_angle (default: the first reference
    sample); the encoder is zeroed there.

    Raises:
        ParameterError: non-positive dt or empty reference
        InstabilityError: |error| > 2pi continuously for 0.5 s
    """
    if not dt > 0:
        raise ParameterError(f"dt must be positive, got {dt}")
    ref = np.asarray(reference, dtype=float)
    if ref.ndim != 1 or ref.size == 0:
        raise ParameterError("reference must be a non-empty 1-D array")

    n = ref.size
    theta0 = float(ref[0]) if initial_angle is None else float(initial_angle)

    # plant
    gain_in = model.torque_constant / model.inertia
    damp = model.damping / model.inertia
    cap = model.speed_cap
    limit = model.current_limit
    counts_per_rad = model.counts_per_radian
    rad_per_count = 1.0 / counts_per_rad

    # controller
    kp, ki, kd = gains.kp, gains.ki, gains.kd
    i_clamp = gains.integral_clamp / ki if ki > 0 else 0.0
    alpha = dt / (gains.derivative_filter_tau + dt)

    actual = np.empty(n)
    counts_out = np.empty(n, dtype=np.int64)
    current = np.empty(n)
    error = np.empty(n)
    saturated = np.zeros(n, dtype=bool)

    theta, velocity = theta0, 0.0
    integral, rate = 0.0, 0.0
    prev_measured = theta0
    diverged_since = None
    hold_ticks = int(math.ceil(DIVERGENCE_HOLD / dt))
    diverged_ticks = 0

    for k, target in enumerate(ref.tolist()):
        counts = math.floor((theta - theta0) * counts_per_rad)
        measured = theta0 + counts * rad_per_count
        err_measured = target - measured

        integral += err_measured * dt
        if integral > i_clamp:
            integral = i_clamp
        elif integral < -i_clamp:
            integral = -i_clamp

        rate += alpha * ((measured - prev_measured) / dt - rate)
        prev_measured = measured

        raw = kp * err_measured + ki * integral - kd * rate
        if raw > limit:
            command, saturated[k] = limit, True
        elif raw < -limit:
            command, saturated[k] = -limit, True
        else:
            command = raw

        err = target - theta
        actual[k] = theta
        counts_out[k] = counts
        current[k] = command
        error[k] = err

        if abs(err) > DIVERGENCE_LIMIT:
            if diverged_since is None:
                diverged_since = k * dt
            diverged_ticks += 1
            if diverged_ticks >= hold_ticks:
                raise InstabilityError(diverged_since)
        else:
            diverged_since, diverged_ticks = None, 0

        velocity += dt * (gain_in * command - damp * velocity)
        if velocity > cap:
            velocity = cap
        elif velocity < -cap:
            velocity = -cap
        theta += dt * velocity

    return TrackingResult(
        reference=ref,
        actual=actual,
        encoder_counts=counts_out,
        current=current,
        error=error,
        saturated=saturated,
        dt=dt,
    )


@dataclass(frozen=True)
class ScheduleTracking:
    """Tracking results of every motor in a schedule"""
    results: Tuple[TrackingResult, ...]

    @property
    def max_abs_error(self) -> float:
        return max(result.max_abs_error for result in self.results)

    @property
    def worst_rms_error(self) -> float:
        return max(result.rms_error for result in self.results)

    def actual_matrix(self) -> np.ndarray:
        return np.column_stack([result.actual for result in self.results])

    def error_matrix(self) -> np.ndarray:
        return np.column_stack([result.error for result in self.results])

    def failing_motors(self, tolerance: float) -> List[int]:
        return [i for i, result in enumerate(self.results) if result.max_abs_error >= tolerance]


def simulate_schedule(model: MotorModel, gains: PidGains, schedule: TrajectorySet) -> ScheduleTracking:
    """
    Run simulate_tracking on every motor of a TrajectorySet.

    Raises:
        InstabilityError: tagged with the first diverging motor
    """
    results = []
    for motor in range(schedule.motor_count):
        try:
            result = simulate_tracking(model, gains, schedule.motor(motor), schedule.dt)
        except InstabilityError as e:
            raise InstabilityError(e.first_divergence_time, motor=motor) from e
        logger.debug(
            f"Motor {motor}: max |e|={result.max_abs_error:.5f} rad, rms={result.rms_error:.5f} rad, "
            f"saturated {result.saturation_fraction:.1%}"
        )
        results.append(result)
    return ScheduleTracking(results=tuple(results))


def export_tracking(
    schedule: TrajectorySet,
    profile: ContactProfile,
    tracking: ScheduleTracking,
    destination: str,
    config_hash: str = "-",
    seed: Optional[int] = None,
):
    """
    Write the command stream layout with each motor's simulated angle and
    tracking error appended (motor_<k>_actual_rad, motor_<k>_error_rad).
    """
    motors = schedule.motor_count
    indent = indentation_matrix(schedule, profile)
    columns = {}
    for i, name in enumerate(angle_columns(motors)):
        columns[name] = schedule.angle_reference[:, i]
    for i, name in enumerate(indent_columns(motors)):
        columns[name] = indent[:, i]
    for i, result in enumerate(tracking.results):
        columns[f"motor_{i}_actual_rad"] = result.actual
    for i, result in enumerate(tracking.results):
        columns[f"motor_{i}_error_rad"] = result.error
    return write_stream(schedule, profile.geometry, destination, columns, config_hash, seed)

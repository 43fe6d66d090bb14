"""
Staggered angle-reference trajectories for the tactor array

Every motor rests at -pi/2, waits for its onset i*d*(2pi/omega), turns one
full revolution at constant omega and rests again. References are kept
unwrapped (-pi/2 -> 3pi/2) so each one is continuous. Elbow-to-wrist
sweeps mirror every reference about the contact point (pi/2 -> -3pi/2). The time axis is zero
at motor 0's rotation onset; pre-roll samples have negative times.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..kinematics import TactorGeometry, ActuationParams, stroke_times
from ..kinematics.units import MOTOR_SPEED_CAP
from ..lib.errors import ParameterError

logger = logging.getLogger(__name__)

DEFAULT_TICK_RATE = 10_000.0
REST_ANGLE = -math.pi / 2

# Minimum samples per revolution a stream must carry
MIN_SAMPLES_PER_REVOLUTION = 200

WRIST_TO_ELBOW = 1
ELBOW_TO_WRIST = -1


@dataclass(frozen=True)
class TrajectorySet:
    """Sampled angle references for every motor at a fixed tick rate"""
    params: ActuationParams
    tick_rate: float
    onset_ticks: Tuple[int, ...]
    pre_roll_ticks: int
    time: np.ndarray  # (samples,) seconds
    angle_reference: np.ndarray  # (samples, motors) rad
    direction: int = WRIST_TO_ELBOW  # sign of rotation and of tactor positions along the arm

    @property
    def motor_count(self) -> int:
        return self.angle_reference.shape[1]

    @property
    def sample_count(self) -> int:
        return self.angle_reference.shape[0]

    @property
    def dt(self) -> float:
        return 1.0 / self.tick_rate

    @property
    def onsets(self) -> Tuple[float, ...]:
        """Rotation onset of each motor in seconds (tick-aligned)"""
        return tuple(tick / self.tick_rate for tick in self.onset_ticks)

    @property
    def duration(self) -> float:
        return (self.sample_count - 1) / self.tick_rate

    def motor(self, index: int) -> np.ndarray:
        """Reference of one motor as a (samples,) array"""
        return self.angle_reference[:, index]

    def tactor_positions(self) -> np.ndarray:
        """Position of each contact center along the arm relative to motor 0 (mm)"""
        return self.direction * self.params.spacing * np.arange(self.motor_count)


def _freeze(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def _sample_axis(total_ticks: int, pre_roll_ticks: int, tick_rate: float) -> Tuple[np.ndarray, np.ndarray]:
    ticks = np.arange(total_ticks + 1, dtype=np.int64) - pre_roll_ticks
    return ticks, ticks / tick_rate


def build_schedule(
    geometry: TactorGeometry,
    params: ActuationParams,
    tick_rate: float = DEFAULT_TICK_RATE,
    pre_roll: float = 0.0,
    post_roll: float = 0.0,
    direction: int = WRIST_TO_ELBOW,
    speed_cap: float = MOTOR_SPEED_CAP,
) -> TrajectorySet:
    """
    Build one staggered single-revolution reference per motor.

    Onsets are rounded to the nearest tick. The sampled window covers the
    pre-roll hold, the full actuation time and the post-roll hold, endpoints
    included. direction flips the sense of rotation of every motor together
    with the order of the tactors along the arm.

    Raises:
        ParameterError: non-positive tick rate, too few samples per revolution,
            negative holds, bad direction, or omega above the speed cap
    """
    if not tick_rate > 0:
        raise ParameterError(f"tick_rate must be positive, got {tick_rate}")
    if direction not in (WRIST_TO_ELBOW, ELBOW_TO_WRIST):
        raise ParameterError(f"direction must be +1 or -1, got {direction}")
    if pre_roll < 0 or post_roll < 0:
        raise ParameterError("pre/post roll holds must be non-negative")
    params.check_speed_cap(speed_cap)

    samples_per_rev = tick_rate * params.period
    if samples_per_rev < MIN_SAMPLES_PER_REVOLUTION:
        raise ParameterError(
            f"tick_rate {tick_rate:g} Hz gives {samples_per_rev:.1f} samples per revolution; "
            f"need at least {MIN_SAMPLES_PER_REVOLUTION}"
        )

    period = params.period
    onset_ticks = tuple(
        int(round(i * params.onset_step * tick_rate)) for i in range(params.tactor_count)
    )
    _, actuation_time = stroke_times(geometry, params)
    rotation_end_tick = onset_ticks[-1] + int(round(period * tick_rate))
    pre_roll_ticks = int(round(pre_roll * tick_rate))
    post_roll_ticks = int(round(post_roll * tick_rate))
    total_ticks = pre_roll_ticks + rotation_end_tick + post_roll_ticks

    ticks, time = _sample_axis(total_ticks, pre_roll_ticks, tick_rate)
    angles = np.empty((ticks.size, params.tactor_count))
    for motor, onset in enumerate(onset_ticks):
        elapsed = np.clip((ticks - onset) / tick_rate, 0.0, period)
        angles[:, motor] = direction * (REST_ANGLE + params.angular_velocity * elapsed)

    schedule = TrajectorySet(
        params=params,
        tick_rate=float(tick_rate),
        onset_ticks=onset_ticks,
        pre_roll_ticks=pre_roll_ticks,
        time=_freeze(time),
        angle_reference=_freeze(angles),
        direction=direction,
    )
    logger.info(
        f"Built schedule: N={params.tactor_count}, omega={params.angular_velocity:.4f} rad/s, "
        f"d={params.delay_fraction:.2f}, t_a={actuation_time:.3f} s, {schedule.sample_count} samples at {tick_rate:g} Hz"
    )
    return schedule


def rest_schedule(
    params: ActuationParams,
    duration: float,
    tick_rate: float = DEFAULT_TICK_RATE,
    direction: int = WRIST_TO_ELBOW,
) -> TrajectorySet:
    """Hold-only schedule: every motor stays at rest (-pi/2, mirrored for -1) for the whole window"""
    if not tick_rate > 0:
        raise ParameterError(f"tick_rate must be positive, got {tick_rate}")
    if duration < 0:
        raise ParameterError(f"duration must be non-negative, got {duration}")
    if direction not in (WRIST_TO_ELBOW, ELBOW_TO_WRIST):
        raise ParameterError(f"direction must be +1 or -1, got {direction}")

    total_ticks = int(round(duration * tick_rate))
    _, time = _sample_axis(total_ticks, 0, tick_rate)
    angles = np.full((time.size, params.tactor_count), direction * REST_ANGLE)
    # onsets past the window: nothing rotates
    onset_ticks = tuple([total_ticks + 1] * params.tactor_count)
    return TrajectorySet(
        params=params,
        tick_rate=float(tick_rate),
        onset_ticks=onset_ticks,
        pre_roll_ticks=0,
        time=_freeze(time),
        angle_reference=_freeze(angles),
        direction=direction,
    )

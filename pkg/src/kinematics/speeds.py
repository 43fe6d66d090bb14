"""
Local and apparent stroke speeds

Speeds are computed in mm/s; cm/s is only used for reporting.
"""
import logging
import math
from dataclasses import dataclass
from numbers import Real
from typing import List, Sequence, Tuple, Union

from .geometry import TactorGeometry
from .units import MOTOR_SPEED_CAP, mm_s_to_cm_s
from ..lib.errors import ParameterError

logger = logging.getLogger(__name__)

# Stroking speeds CT afferents respond to best, cm/s
CT_BAND_CM_S = (1.0, 10.0)


@dataclass(frozen=True)
class ActuationParams:
    """How the tactor array is driven"""
    angular_velocity: float  # rad/s
    delay_fraction: float  # fraction of one rotation period between adjacent onsets
    tactor_count: int = 5
    spacing: float = 20.0  # mm, center-to-center between adjacent shafts

    def __post_init__(self):
        if not math.isfinite(self.angular_velocity) or self.angular_velocity <= 0:
            raise ParameterError(f"angular_velocity must be positive, got {self.angular_velocity}")
        if not 0.0 <= self.delay_fraction <= 1.0:
            raise ParameterError(f"delay_fraction must be within [0, 1], got {self.delay_fraction}")
        if (
            isinstance(self.tactor_count, bool)
            or not isinstance(self.tactor_count, Real)
            or not math.isfinite(self.tactor_count)
            or int(self.tactor_count) != self.tactor_count
            or self.tactor_count < 1
        ):
            raise ParameterError(f"tactor_count must be an integer >= 1, got {self.tactor_count}")
        if not math.isfinite(self.spacing) or self.spacing < 0 or (self.tactor_count > 1 and self.spacing <= 0):
            raise ParameterError(f"spacing must be positive when tactor_count > 1, got {self.spacing}")

    @property
    def period(self) -> float:
        """Time for one full revolution, 2pi/omega"""
        return 2 * math.pi / self.angular_velocity

    @property
    def onset_step(self) -> float:
        """Time between adjacent rotation onsets, d * 2pi/omega"""
        return self.delay_fraction * self.period

    def check_speed_cap(self, speed_cap: float = MOTOR_SPEED_CAP) -> None:
        """Raise ParameterError if omega exceeds the motor speed cap"""
        if self.angular_velocity > speed_cap:
            raise ParameterError(
                f"angular_velocity {self.angular_velocity:.4f} rad/s exceeds the motor cap {speed_cap:.4f} rad/s"
            )


@dataclass(frozen=True)
class SpeedSummary:
    """Timing and speeds of one actuation condition"""
    angular_velocity: float
    delay_fraction: float
    tactor_count: int
    spacing: float
    stroke_skin_travel: float  # mm, 2x per tactor
    contact_time: float  # s, t
    actuation_time: float  # s, t_a
    local_speed: float  # mm/s
    apparent_speed: float  # mm/s
    overlapping: bool  # adjacent contacts intersect (d < theta/pi)

    @property
    def local_cm_s(self) -> float:
        return mm_s_to_cm_s(self.local_speed)

    @property
    def apparent_cm_s(self) -> float:
        return mm_s_to_cm_s(self.apparent_speed)

    @property
    def in_ct_band(self) -> bool:
        low, high = CT_BAND_CM_S
        return low <= self.apparent_cm_s <= high


def local_speed(geometry: TactorGeometry, angular_velocity: float) -> float:
    """Speed of one tip sliding along the skin, x*omega/theta (mm/s)"""
    if not angular_velocity > 0:
        raise ParameterError(f"angular_velocity must be positive, got {angular_velocity}")
    return geometry.half_travel * angular_velocity / geometry.exit_angle


def stroke_times(geometry: TactorGeometry, params: ActuationParams) -> Tuple[float, float]:
    """
    Returns:
        (contact_time, actuation_time) in seconds:
        t = (2pi/omega)(theta/pi + d(N-1)), t_a = (2pi/omega)(1 + d(N-1))
    """
    stagger = params.delay_fraction * (params.tactor_count - 1)
    contact_time = params.period * (geometry.contact_fraction + stagger)
    actuation_time = params.period * (1.0 + stagger)
    return contact_time, actuation_time


def apparent_speed(geometry: TactorGeometry, params: ActuationParams) -> float:
    """Average speed of the contact point along the arm, (2x + D(N-1))/t (mm/s)"""
    if params.tactor_count == 1:
        # single tactor: the stroke is the local pass
        return local_speed(geometry, params.angular_velocity)
    contact_time, _ = stroke_times(geometry, params)
    distance = geometry.stroke_travel + params.spacing * (params.tactor_count - 1)
    return distance / contact_time


def summarize_speeds(geometry: TactorGeometry, params: ActuationParams) -> SpeedSummary:
    contact_time, actuation_time = stroke_times(geometry, params)
    return SpeedSummary(
        angular_velocity=params.angular_velocity,
        delay_fraction=params.delay_fraction,
        tactor_count=params.tactor_count,
        spacing=params.spacing,
        stroke_skin_travel=geometry.stroke_travel,
        contact_time=contact_time,
        actuation_time=actuation_time,
        local_speed=local_speed(geometry, params.angular_velocity),
        apparent_speed=apparent_speed(geometry, params),
        overlapping=params.tactor_count > 1 and params.delay_fraction < geometry.contact_fraction,
    )


def speed_table(
    geometry: TactorGeometry,
    angular_velocities: Sequence[float],
    delay_fractions: Sequence[float],
    tactor_count: int,
    spacing: Union[float, Sequence[float]],
) -> List[SpeedSummary]:
    """
    One SpeedSummary per (spacing, delay, omega) combination.

    Cells are emitted row-major: spacing outermost, then delay, then angular
    velocity. A single spacing may be given as a plain number.
    """
    spacings = [spacing] if isinstance(spacing, (int, float)) else list(spacing)
    if not angular_velocities or not delay_fractions or not spacings:
        raise ParameterError("speed_table needs at least one angular velocity, delay and spacing")

    cells = [
        summarize_speeds(geometry, ActuationParams(omega, delay, tactor_count, gap))
        for gap in spacings
        for delay in delay_fractions
        for omega in angular_velocities
    ]
    logger.debug(f"Computed {len(cells)} speed cells for N={tactor_count}")
    return cells

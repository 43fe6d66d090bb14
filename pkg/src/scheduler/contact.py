"""
Skin-contact profile of a schedule

A tactor is on the skin while its reference angle is within
[-exit_angle, exit_angle]. Contact windows follow analytically from the
tick-aligned onsets; indentation curves are sampled at the schedule ticks.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from .trajectories import TrajectorySet, REST_ANGLE
from ..kinematics import TactorGeometry, indentation_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ContactEvent:
    """One tactor's pass over the skin"""
    motor: int
    first_sample: int  # index of the first in-contact sample
    contact_start: float  # s
    contact_end: float  # s
    time: np.ndarray  # sample times inside the window
    indentation: np.ndarray  # mm at those times

    @property
    def duration(self) -> float:
        return self.contact_end - self.contact_start

    def overlaps(self, other: "ContactEvent") -> bool:
        return self.contact_start < other.contact_end and other.contact_start < self.contact_end

    def indentation_integral(self) -> float:
        """Trapezoidal integral of the sampled indentation curve (mm*s)"""
        if self.time.size < 2:
            return 0.0
        return float(trapezoid(self.indentation, self.time))


@dataclass(frozen=True)
class ContactProfile:
    """All contact windows of a schedule plus the overlap classification"""
    events: Tuple[ContactEvent, ...]
    overlapping: bool
    first_contact: Optional[float]
    last_release: Optional[float]
    geometry: TactorGeometry
    spacing: float  # mm

    @property
    def stroke_travel(self) -> float:
        return self.geometry.stroke_travel

    @property
    def contact_window(self) -> float:
        """Time from first contact to last release (t)"""
        if self.first_contact is None:
            return 0.0
        return self.last_release - self.first_contact

    def apparent_speed(self) -> float:
        """(2x + D(N-1)) over the observed contact window (mm/s)"""
        if not self.events:
            return 0.0
        distance = self.stroke_travel + self.spacing * (len(self.events) - 1)
        return distance / self.contact_window

    def overlapping_pairs(self) -> Tuple[Tuple[int, int], ...]:
        """Adjacent motor pairs whose contact windows intersect"""
        return tuple(
            (a.motor, b.motor)
            for a, b in zip(self.events, self.events[1:])
            if a.overlaps(b)
        )


def contact_profile(schedule: TrajectorySet, geometry: TactorGeometry) -> ContactProfile:
    """
    Derive per-motor contact windows and indentation curves from a schedule.

    Motors whose pass falls outside the sampled window (hold-only schedules)
    contribute no event.
    """
    omega = schedule.params.angular_velocity
    theta = geometry.exit_angle
    lead_in = (-theta - REST_ANGLE) / omega  # rest to first touch
    lead_out = (theta - REST_ANGLE) / omega  # rest to release
    window_end = schedule.time[-1]

    events = []
    for motor, onset in enumerate(schedule.onsets):
        start, end = onset + lead_in, onset + lead_out
        if end > window_end:
            continue
        angles = schedule.motor(motor)
        inside = np.abs(angles) <= theta
        indices = np.flatnonzero(inside)
        events.append(
            ContactEvent(
                motor=motor,
                first_sample=int(indices[0]) if indices.size else 0,
                contact_start=start,
                contact_end=end,
                time=schedule.time[inside],
                indentation=indentation_at(geometry, angles[inside]),
            )
        )

    overlapping = any(a.overlaps(b) for a, b in zip(events, events[1:]))
    profile = ContactProfile(
        events=tuple(events),
        overlapping=overlapping,
        first_contact=events[0].contact_start if events else None,
        last_release=events[-1].contact_end if events else None,
        geometry=geometry,
        spacing=schedule.params.spacing,
    )
    logger.debug(
        f"Contact profile: {len(events)} passes, overlapping={overlapping}, window={profile.contact_window:.4f} s"
    )
    return profile

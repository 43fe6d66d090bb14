"""
Tactor contact geometry

A rounded tactor tip of radius R_S sits at distance R_L from the motor shaft.
The skin plane lies at standoff H from the shaft, so the tip touches the skin
while |angle| <= exit_angle and indents it by at most I_max at angle 0.
Angles are in radians, lengths in mm. The skin is a rigid plane.
"""
import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..lib.errors import GeometryError

logger = logging.getLogger(__name__)

DEFAULT_TIP_RADIUS = 3.0
DEFAULT_TRAJECTORY_RADIUS = 9.0
DEFAULT_MAX_INDENTATION = 1.5


@dataclass(frozen=True)
class TactorGeometry:
    """Derived contact geometry of one tactor; build with derive_geometry()"""
    tip_radius: float
    trajectory_radius: float
    max_indentation: float
    standoff: float
    exit_angle: float
    half_travel: float

    @property
    def stroke_travel(self) -> float:
        """Distance the tip slides along the skin during one pass (2x)"""
        return 2.0 * self.half_travel

    @property
    def contact_fraction(self) -> float:
        """Fraction of a revolution spent on the skin (theta/pi)"""
        return self.exit_angle / math.pi

    def vertical_reach(self, angle: float) -> float:
        """y = R_L cos(angle), height of the tip center above the shaft"""
        return self.trajectory_radius * math.cos(angle)


def derive_geometry(
    tip_radius: float = DEFAULT_TIP_RADIUS,
    trajectory_radius: float = DEFAULT_TRAJECTORY_RADIUS,
    max_indentation: float = DEFAULT_MAX_INDENTATION,
) -> TactorGeometry:
    """
    Derive standoff, exit angle and half travel from the tactor dimensions.

    H = R_S + R_L - I_max, theta = arccos((H - R_S) / R_L), x = R_L sin(theta)

    Raises:
        GeometryError: non-positive radii, indentation outside (0, R_L), or an
            arccos argument outside (0, 1)
    """
    for name, value in (
        ("tip_radius", tip_radius),
        ("trajectory_radius", trajectory_radius),
        ("max_indentation", max_indentation),
    ):
        if not math.isfinite(value) or value <= 0:
            raise GeometryError(f"{name} must be positive, got {value}")

    if max_indentation >= trajectory_radius:
        raise GeometryError(
            f"max_indentation ({max_indentation} mm) must be below trajectory_radius ({trajectory_radius} mm)"
        )

    standoff = tip_radius + trajectory_radius - max_indentation
    ratio = (standoff - tip_radius) / trajectory_radius
    if not 0.0 < ratio < 1.0:
        raise GeometryError(f"(H - R_S)/R_L = {ratio:.6f} is outside (0, 1); tactor never leaves the skin")

    exit_angle = math.acos(ratio)
    half_travel = trajectory_radius * math.sin(exit_angle)

    geometry = TactorGeometry(
        tip_radius=float(tip_radius),
        trajectory_radius=float(trajectory_radius),
        max_indentation=float(max_indentation),
        standoff=standoff,
        exit_angle=exit_angle,
        half_travel=half_travel,
    )
    logger.debug(
        f"Derived geometry: H={standoff:.4f} mm, theta={exit_angle:.5f} rad, 2x={geometry.stroke_travel:.4f} mm"
    )
    return geometry


def indentation_at(
    geometry: TactorGeometry,
    angle: Union[float, np.ndarray],
) -> Union[float, np.ndarray]:
    """
    Indentation depth (mm) of the tip into the skin at a rotation angle.

    I = I_max - ((R_S + R_L) - (y + R_S)) = I_max + y - R_L with y = R_L cos(angle),
    and exactly 0 once |angle| >= exit_angle. Accepts scalars or arrays.
    """
    angles = np.asarray(angle, dtype=float)
    depth = geometry.max_indentation + geometry.trajectory_radius * np.cos(angles) - geometry.trajectory_radius
    depth = np.where(np.abs(angles) >= geometry.exit_angle, 0.0, np.maximum(depth, 0.0))
    if depth.ndim == 0:
        return float(depth)
    return depth


def critical_delay(geometry: TactorGeometry) -> float:
    """Largest delay fraction for which adjacent contacts still overlap (theta/pi)"""
    return geometry.contact_fraction

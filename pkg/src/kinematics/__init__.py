"""
Contact geometry and stroke speed computations
"""
from .geometry import TactorGeometry, derive_geometry, indentation_at, critical_delay
from .speeds import (
    ActuationParams,
    SpeedSummary,
    local_speed,
    stroke_times,
    apparent_speed,
    summarize_speeds,
    speed_table,
)
from .tables import speed_frame, write_speed_csv, read_speed_csv

__all__ = [
    'TactorGeometry', 'derive_geometry', 'indentation_at', 'critical_delay',
    'ActuationParams', 'SpeedSummary', 'local_speed', 'stroke_times', 'apparent_speed',
    'summarize_speeds', 'speed_table', 'speed_frame', 'write_speed_csv', 'read_speed_csv',
]

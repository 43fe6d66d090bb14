"""
Geared DC motor and PID position-loop simulation
"""
from .model import MotorModel, PidGains
from .simulate import (
    TrackingResult,
    ScheduleTracking,
    SpeedCapCheck,
    simulate_tracking,
    simulate_schedule,
    validate_speed_cap,
    export_tracking,
)

__all__ = [
    'MotorModel', 'PidGains', 'TrackingResult', 'ScheduleTracking', 'SpeedCapCheck',
    'simulate_tracking', 'simulate_schedule', 'validate_speed_cap', 'export_tracking',
]

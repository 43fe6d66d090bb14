"""
Staggered motor trajectories, skin-contact profiles and command streams
"""
from .trajectories import (
    TrajectorySet,
    build_schedule,
    rest_schedule,
    DEFAULT_TICK_RATE,
    REST_ANGLE,
    WRIST_TO_ELBOW,
    ELBOW_TO_WRIST,
)
from .contact import ContactEvent, ContactProfile, contact_profile
from .stream import export_command_stream, import_command_stream, write_stream, read_stream

__all__ = [
    'TrajectorySet', 'build_schedule', 'rest_schedule', 'DEFAULT_TICK_RATE', 'REST_ANGLE',
    'WRIST_TO_ELBOW', 'ELBOW_TO_WRIST', 'ContactEvent', 'ContactProfile', 'contact_profile',
    'export_command_stream', 'import_command_stream', 'write_stream', 'read_stream',
]

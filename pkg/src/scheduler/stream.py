"""
Command stream CSV: fixed-rate samples of every motor's angle reference and
indentation, with a metadata line that is enough to rebuild the schedule.

    # hapticstroke 1.0.0 config=<hash> seed=-
    # stream version=1 tip_radius=3.0 ... onset_ticks=0;1000;2000
    t_s,motor_0_rad,...,motor_0_indent_mm,...
    <rows, %.17g so every float reads back bit-exactly>
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from .contact import ContactProfile
from .trajectories import TrajectorySet
from ..kinematics import ActuationParams, TactorGeometry, derive_geometry
from ..lib.errors import ArtifactIOError, RecordParseError
from ..lib.provenance import provenance_header

logger = logging.getLogger(__name__)

STREAM_FORMAT_VERSION = 1
STREAM_MARKER = "# stream"
_FLOAT_FORMAT = "%.17g"


def angle_columns(motor_count: int) -> List[str]:
    return [f"motor_{i}_rad" for i in range(motor_count)]


def indent_columns(motor_count: int) -> List[str]:
    return [f"motor_{i}_indent_mm" for i in range(motor_count)]


def indentation_matrix(schedule: TrajectorySet, profile: ContactProfile) -> np.ndarray:
    """(samples, motors) indentation, zero outside each contact window"""
    matrix = np.zeros_like(schedule.angle_reference)
    for event in profile.events:
        stop = event.first_sample + event.indentation.size
        matrix[event.first_sample:stop, event.motor] = event.indentation
    return matrix


def _metadata_line(schedule: TrajectorySet, geometry: TactorGeometry) -> str:
    params = schedule.params
    fields = {
        "version": STREAM_FORMAT_VERSION,
        "tip_radius": repr(geometry.tip_radius),
        "trajectory_radius": repr(geometry.trajectory_radius),
        "max_indentation": repr(geometry.max_indentation),
        "angular_velocity": repr(params.angular_velocity),
        "delay_fraction": repr(params.delay_fraction),
        "tactor_count": params.tactor_count,
        "spacing": repr(float(params.spacing)),
        "tick_rate": repr(schedule.tick_rate),
        "pre_roll_ticks": schedule.pre_roll_ticks,
        "direction": schedule.direction,
        "onset_ticks": ";".join(str(tick) for tick in schedule.onset_ticks),
    }
    return STREAM_MARKER + " " + " ".join(f"{key}={value}" for key, value in fields.items())


def write_stream(
    schedule: TrajectorySet,
    geometry: TactorGeometry,
    destination: str,
    columns: Dict[str, np.ndarray],
    config_hash: str = "-",
    seed: Optional[int] = None,
) -> Path:
    """
    Write the time column followed by the given named (samples,) columns.

    Raises:
        ArtifactIOError: with the destination path
    """
    path = Path(destination)
    names = ["t_s"] + list(columns)
    data = np.column_stack([schedule.time] + [np.asarray(columns[name]) for name in columns])
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(provenance_header(config_hash, seed) + "\n")
            f.write(_metadata_line(schedule, geometry) + "\n")
            f.write(",".join(names) + "\n")
            np.savetxt(f, data, fmt=_FLOAT_FORMAT, delimiter=",")
    except OSError as e:
        raise ArtifactIOError(str(path), f"cannot write stream: {e}") from e

    logger.info(f"Wrote {data.shape[0]} x {len(names)} stream to {path}")
    return path


def export_command_stream(
    schedule: TrajectorySet,
    profile: ContactProfile,
    destination: str,
    config_hash: str = "-",
    seed: Optional[int] = None,
) -> Path:
    """Write angle references and indentation curves of every motor"""
    indent = indentation_matrix(schedule, profile)
    columns = {}
    for i, name in enumerate(angle_columns(schedule.motor_count)):
        columns[name] = schedule.angle_reference[:, i]
    for i, name in enumerate(indent_columns(schedule.motor_count)):
        columns[name] = indent[:, i]
    return write_stream(schedule, profile.geometry, destination, columns, config_hash, seed)


def _parse_metadata(path: str, line_number: int, line: str) -> Dict[str, str]:
    fields = {}
    for token in line[len(STREAM_MARKER):].split():
        key, sep, value = token.partition("=")
        if not sep:
            raise RecordParseError(path, line_number, f"metadata token '{token}' is not key=value")
        fields[key] = value
    if int(fields.get("version", -1)) != STREAM_FORMAT_VERSION:
        raise RecordParseError(path, line_number, f"unsupported stream version {fields.get('version')}")
    return fields


def read_stream(source: str) -> Tuple[Dict[str, str], List[str], np.ndarray]:
    """
    Returns:
        (metadata fields, column names, data matrix)
    """
    path = str(source)
    header_lines = 0
    metadata = None
    names = None
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                header_lines += 1
                if line.startswith(STREAM_MARKER):
                    metadata = _parse_metadata(path, line_number, line.strip())
                elif line.startswith("#"):
                    continue
                else:
                    names = line.strip().split(",")
                    break
        if metadata is None or names is None:
            raise RecordParseError(path, header_lines, "missing stream metadata or column header")
        data = np.loadtxt(path, delimiter=",", skiprows=header_lines, ndmin=2)
    except OSError as e:
        raise ArtifactIOError(path, f"cannot read stream: {e}") from e
    except ValueError as e:
        raise RecordParseError(path, header_lines + 1, f"malformed sample row: {e}") from e

    if data.shape[1] != len(names):
        raise RecordParseError(path, header_lines, f"{len(names)} columns named but rows have {data.shape[1]}")
    return metadata, names, data


def _header_positions(path: str) -> Tuple[int, int]:
    """Line numbers of the stream metadata line and the column header"""
    metadata_line = column_line = 0
    with open(path, "r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if line.startswith(STREAM_MARKER):
                metadata_line = line_number
            elif not line.startswith("#"):
                column_line = line_number
                break
    return metadata_line, column_line


def import_command_stream(source: str) -> Tuple[TrajectorySet, TactorGeometry, np.ndarray]:
    """
    Rebuild the schedule, geometry and indentation matrix from a stream file.

    Angles and times come back bit-exactly from the written %.17g samples.

    Raises:
        RecordParseError: missing or malformed metadata fields or columns
    """
    path = str(source)
    metadata, names, data = read_stream(path)
    metadata_line, column_line = _header_positions(path)
    try:
        geometry = derive_geometry(
            float(metadata["tip_radius"]),
            float(metadata["trajectory_radius"]),
            float(metadata["max_indentation"]),
        )
        params = ActuationParams(
            angular_velocity=float(metadata["angular_velocity"]),
            delay_fraction=float(metadata["delay_fraction"]),
            tactor_count=int(metadata["tactor_count"]),
            spacing=float(metadata["spacing"]),
        )
        tick_rate = float(metadata["tick_rate"])
        onset_ticks = tuple(int(tick) for tick in metadata["onset_ticks"].split(";"))
        pre_roll_ticks = int(metadata["pre_roll_ticks"])
        direction = int(metadata["direction"])
    except KeyError as e:
        raise RecordParseError(path, metadata_line, f"missing metadata field {e}") from e
    except ValueError as e:
        raise RecordParseError(path, metadata_line, f"malformed metadata value: {e}") from e

    motors = params.tactor_count
    index = {name: i for i, name in enumerate(names)}
    try:
        time = data[:, index["t_s"]].copy()
        angles = data[:, [index[name] for name in angle_columns(motors)]]
        indent = data[:, [index[name] for name in indent_columns(motors)]]
    except KeyError as e:
        raise RecordParseError(path, column_line, f"missing column {e}") from e

    angles = np.ascontiguousarray(angles)
    time.setflags(write=False)
    angles.setflags(write=False)
    schedule = TrajectorySet(
        params=params,
        tick_rate=tick_rate,
        onset_ticks=onset_ticks,
        pre_roll_ticks=pre_roll_ticks,
        time=time,
        angle_reference=angles,
        direction=direction,
    )
    logger.info(f"Imported {schedule.sample_count}-sample stream for {motors} motors from {source}")
    return schedule, geometry, indent

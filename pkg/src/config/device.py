"""
Device configuration: tactor geometry, default actuation, motor model, PID
gains and control timing, stored as an INI file.

    [meta]
    format_version = 1

    [geometry]
    tip_radius = 3.0
    ...

Floats are written with repr() and angular velocities as exact pi fractions
when they are one, so save() then load() gives back identical values.
"""
import configparser
import hashlib
import logging
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from ..kinematics import ActuationParams, TactorGeometry, derive_geometry
from ..kinematics.units import (
    MOTOR_SPEED_CAP_RPM,
    format_angular_velocity,
    parse_angular_velocity,
    rpm_to_rad_s,
)
from ..lib.errors import ArtifactIOError, ConfigError, HapticStrokeError
from ..motorsim import MotorModel, PidGains

logger = logging.getLogger(__name__)

DEVICE_FORMAT_VERSION = 1

# section -> ordered field names
SECTIONS: Dict[str, Tuple[str, ...]] = {
    "meta": ("format_version",),
    "geometry": ("tip_radius", "trajectory_radius", "max_indentation"),
    "actuation": ("angular_velocity", "delay_fraction", "tactor_count", "spacing", "sweep_direction"),
    "motor": (
        "gear_ratio",
        "speed_cap_rpm",
        "current_limit",
        "torque_constant",
        "inertia",
        "damping",
        "encoder_counts_per_rev",
    ),
    "pid": ("kp", "ki", "kd", "integral_clamp", "derivative_filter_tau"),
    "control": ("tick_rate", "pre_roll", "post_roll", "tracking_tolerance"),
}

_INT_FIELDS = {"format_version", "tactor_count", "sweep_direction", "encoder_counts_per_rev"}


@dataclass(frozen=True)
class DeviceConfig:
    """Everything a command needs to know about the rig"""

    format_version: int = DEVICE_FORMAT_VERSION

    # Tactor geometry (mm)
    tip_radius: float = 3.0
    trajectory_radius: float = 9.0
    max_indentation: float = 1.5

    # Default actuation
    angular_velocity: float = 3.141592653589793  # rad/s
    delay_fraction: float = 0.1
    tactor_count: int = 5
    spacing: float = 20.0  # mm
    sweep_direction: int = 1  # +1 wrist to elbow, -1 elbow to wrist

    # Motor model
    gear_ratio: float = 141.0
    speed_cap_rpm: float = MOTOR_SPEED_CAP_RPM
    current_limit: float = 0.010
    torque_constant: float = 1.5
    inertia: float = 5.0e-6
    damping: float = 5.0e-4
    encoder_counts_per_rev: int = 288768

    # PID gains
    kp: float = 0.9
    ki: float = 90.0
    kd: float = 2.667e-3
    integral_clamp: float = 0.05
    derivative_filter_tau: float = 5.0e-4

    # Control timing
    tick_rate: float = 10000.0  # Hz
    pre_roll: float = 0.2  # s
    post_roll: float = 0.2  # s
    tracking_tolerance: float = 0.05  # rad

    def geometry(self) -> TactorGeometry:
        return derive_geometry(self.tip_radius, self.trajectory_radius, self.max_indentation)

    def params(self) -> ActuationParams:
        return ActuationParams(
            angular_velocity=self.angular_velocity,
            delay_fraction=self.delay_fraction,
            tactor_count=self.tactor_count,
            spacing=self.spacing,
        )

    def motor_model(self) -> MotorModel:
        return MotorModel(
            gear_ratio=self.gear_ratio,
            speed_cap=rpm_to_rad_s(self.speed_cap_rpm),
            current_limit=self.current_limit,
            torque_constant=self.torque_constant,
            inertia=self.inertia,
            damping=self.damping,
            encoder_counts_per_rev=self.encoder_counts_per_rev,
        )

    def gains(self) -> PidGains:
        return PidGains(
            kp=self.kp,
            ki=self.ki,
            kd=self.kd,
            integral_clamp=self.integral_clamp,
            derivative_filter_tau=self.derivative_filter_tau,
        )

    def validate(self) -> List[str]:
        """Validate values and return list of errors"""
        errors = []
        if self.format_version != DEVICE_FORMAT_VERSION:
            errors.append(f"format_version {self.format_version} is not supported (expected {DEVICE_FORMAT_VERSION})")
        for build in (self.geometry, self.params, self.motor_model, self.gains):
            try:
                build()
            except HapticStrokeError as e:
                errors.append(str(e))
        if self.sweep_direction not in (1, -1):
            errors.append(f"sweep_direction must be 1 or -1, got {self.sweep_direction}")
        if not self.tick_rate > 0:
            errors.append(f"tick_rate must be positive, got {self.tick_rate}")
        if self.pre_roll < 0 or self.post_roll < 0:
            errors.append("pre_roll and post_roll must be non-negative")
        if not self.tracking_tolerance > 0:
            errors.append(f"tracking_tolerance must be positive, got {self.tracking_tolerance}")
        return errors

    def is_valid(self) -> bool:
        return len(self.validate()) == 0

    def with_overrides(self, **overrides) -> "DeviceConfig":
        """
        Copy with the given fields replaced; None values are ignored so CLI
        flags that were not passed fall through to the file value.
        """
        known = {f.name for f in fields(self)}
        unknown = sorted(set(overrides) - known)
        if unknown:
            raise ConfigError(f"unknown device settings: {', '.join(unknown)}")
        changes = {key: value for key, value in overrides.items() if value is not None}
        return replace(self, **changes) if changes else self

    def to_ini(self) -> str:
        """Canonical serialization; also the input of config_hash()"""
        lines = []
        for section, names in SECTIONS.items():
            if lines:
                lines.append("")
            lines.append(f"[{section}]")
            for name in names:
                lines.append(f"{name} = {_format_value(name, getattr(self, name))}")
        return "\n".join(lines) + "\n"

    def config_hash(self) -> str:
        return hashlib.sha256(self.to_ini().encode("utf-8")).hexdigest()[:16]

    def save(self, path: str) -> Path:
        target = Path(path)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(self.to_ini(), encoding="utf-8")
        except OSError as e:
            raise ArtifactIOError(str(target), f"cannot write device config: {e}") from e
        logger.info(f"Saved device config {self.config_hash()} to {target}")
        return target

    @classmethod
    def from_ini(cls, text: str, source: str = "<string>") -> "DeviceConfig":
        """
        Parse INI text. Missing keys keep their defaults.

        Raises:
            ConfigError: syntax errors, unknown sections or keys (with line
                number), unparsable values, or values failing validate()
        """
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read_string(text, source=source)
        except configparser.Error as e:
            raise ConfigError(f"{source}: {e}") from e

        lines = text.splitlines()
        values = {}
        for section in parser.sections():
            if section not in SECTIONS:
                line = _locate(lines, section)
                raise ConfigError(f"{source}:{line}: unknown section [{section}]")
            for key, raw in parser.items(section):
                if key not in SECTIONS[section]:
                    line = _locate(lines, section, key)
                    raise ConfigError(f"{source}:{line}: unknown key '{key}' in [{section}]")
                try:
                    values[key] = _parse_value(key, raw)
                except (ValueError, ConfigError) as e:
                    line = _locate(lines, section, key)
                    raise ConfigError(f"{source}:{line}: [{section}] {key} = {raw!r} is invalid: {e}") from e

        device = cls(**values)
        errors = device.validate()
        if errors:
            raise ConfigError(f"{source}: " + "; ".join(errors))
        return device

    @classmethod
    def load(cls, path: str) -> "DeviceConfig":
        source = Path(path)
        try:
            text = source.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read device config {source}: {e}") from e
        device = cls.from_ini(text, source=str(source))
        logger.debug(f"Loaded device config {device.config_hash()} from {source}")
        return device

    @classmethod
    def load_or_default(cls, path: Optional[str]) -> "DeviceConfig":
        """Load path if it exists, otherwise the built-in defaults"""
        if path and Path(path).exists():
            return cls.load(path)
        logger.info(f"No device config at {path}; using built-in defaults")
        return cls()


def _format_value(name: str, value) -> str:
    if name == "angular_velocity":
        return format_angular_velocity(value)
    if name in _INT_FIELDS:
        return str(int(value))
    return repr(float(value))


def _parse_value(name: str, raw: str):
    parsers: Dict[str, Callable[[str], object]] = {"angular_velocity": parse_angular_velocity}
    if name in _INT_FIELDS:
        return int(raw)
    return parsers.get(name, float)(raw)


def _locate(lines: List[str], section: str, key: Optional[str] = None) -> int:
    """1-based line of a section header, or of a key inside that section"""
    current = None
    for number, line in enumerate(lines, start=1):
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            current = stripped[1:-1].strip()
            if key is None and current == section:
                return number
        elif key is not None and current == section:
            name = stripped.split("=", 1)[0].split(":", 1)[0].strip().lower()
            if name == key:
                return number
    return 0

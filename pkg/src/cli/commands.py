"""
Subcommand implementations

Each cmd_* takes the parsed argparse namespace, prints its report to stdout
and returns the process exit status. Errors propagate as HapticStrokeError
subclasses; main.py turns them into exit codes.
"""
import logging
from pathlib import Path
from typing import Callable, List, Optional, TypeVar

from ..config import DeviceConfig, config
from ..kinematics import critical_delay, speed_table, summarize_speeds, write_speed_csv
from ..kinematics.units import (
    STUDY_ANGULAR_VELOCITIES,
    STUDY_DELAY_FRACTIONS,
    format_angular_velocity,
    format_delay_percent,
    parse_angular_velocity,
    parse_delay_fraction,
)
from ..lib.errors import ArtifactIOError, ConfigError, ParameterError, TrackingFailure
from ..motorsim import export_tracking, simulate_schedule, validate_speed_cap
from ..scheduler import build_schedule, contact_profile, export_command_stream, rest_schedule
from ..study import (
    RatingLog,
    analyze_ratings,
    format_report,
    generate_plan,
    load_plan,
    load_records,
    run_plan,
    save_plan,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")


def parse_list(text: Optional[str], parse: Callable[[str], T]) -> Optional[List[T]]:
    """Comma-separated tokens; errors name the offending token"""
    if text is None:
        return None
    tokens = [token.strip() for token in text.split(",") if token.strip()]
    if not tokens:
        raise ConfigError(f"empty list '{text}'")
    return [parse(token) for token in tokens]


def parse_spacing(token: str) -> float:
    try:
        return float(str(token).strip().removesuffix("mm"))
    except ValueError:
        raise ConfigError(f"spacing token '{token}' is not a number of millimetres") from None


def load_device(args) -> DeviceConfig:
    """Device config file (or defaults) with CLI flag overrides applied"""
    path = getattr(args, "config", None)
    device = DeviceConfig.load(path) if path else DeviceConfig.load_or_default(config.DEVICE_CONFIG)
    device = device.with_overrides(
        angular_velocity=_optional(getattr(args, "omega", None), parse_angular_velocity),
        delay_fraction=_optional(getattr(args, "delay", None), parse_delay_fraction),
        tactor_count=getattr(args, "tactors", None),
        spacing=_optional(getattr(args, "spacing", None), parse_spacing),
        sweep_direction=getattr(args, "direction", None),
        tick_rate=getattr(args, "tick_rate", None),
        kp=getattr(args, "kp", None),
        ki=getattr(args, "ki", None),
        kd=getattr(args, "kd", None),
        tracking_tolerance=getattr(args, "tolerance", None),
    )
    if getattr(args, "open_loop", False):
        device = device.with_overrides(kp=0.0, ki=0.0, kd=0.0)
    errors = device.validate()
    if errors:
        raise ConfigError("; ".join(errors))
    return device


def _optional(value, parse):
    return None if value is None else parse(value)


def _output_path(explicit: Optional[str], default_name: str) -> str:
    return explicit or str(Path(config.OUTPUT_DIR) / default_name)


def cmd_speeds(args) -> int:
    device = load_device(args)
    geometry = device.geometry()
    omegas = parse_list(args.omegas, parse_angular_velocity) or list(STUDY_ANGULAR_VELOCITIES)
    delays = parse_list(args.delays, parse_delay_fraction) or list(STUDY_DELAY_FRACTIONS)
    spacings = parse_list(args.spacings, parse_spacing) or [device.spacing]

    cells = speed_table(geometry, omegas, delays, device.tactor_count, spacings)
    output = _output_path(args.output, "speeds.csv")
    write_speed_csv(cells, output, device.config_hash())

    slowest = min(cells, key=lambda cell: cell.apparent_speed)
    fastest = max(cells, key=lambda cell: cell.apparent_speed)
    in_band = sum(cell.in_ct_band for cell in cells)
    print(f"Wrote {len(cells)} cells to {output}")
    print(
        f"min {slowest.apparent_cm_s:.1f} cm/s (omega={format_angular_velocity(slowest.angular_velocity)}, "
        f"d={format_delay_percent(slowest.delay_fraction)}, D={slowest.spacing:g} mm)"
    )
    print(
        f"max {fastest.apparent_cm_s:.1f} cm/s (omega={format_angular_velocity(fastest.angular_velocity)}, "
        f"d={format_delay_percent(fastest.delay_fraction)}, D={fastest.spacing:g} mm)"
    )
    print(f"{in_band} of {len(cells)} cells within 1-10 cm/s")
    return 0


def _build(device: DeviceConfig, hold_only: Optional[float]):
    params = device.params()
    if hold_only is not None:
        return rest_schedule(params, hold_only, device.tick_rate, device.sweep_direction)
    return build_schedule(
        device.geometry(),
        params,
        tick_rate=device.tick_rate,
        pre_roll=device.pre_roll,
        post_roll=device.post_roll,
        direction=device.sweep_direction,
        speed_cap=device.motor_model().speed_cap,
    )


def cmd_schedule(args) -> int:
    device = load_device(args)
    geometry = device.geometry()
    schedule = _build(device, args.hold_only)
    profile = contact_profile(schedule, geometry)
    output = _output_path(args.output, "stream.csv")
    export_command_stream(schedule, profile, output, device.config_hash())

    params = schedule.params
    summary = summarize_speeds(geometry, params)
    print(f"Wrote {schedule.sample_count} samples x {schedule.motor_count} motors to {output}")
    print(
        f"omega={format_angular_velocity(params.angular_velocity)} rad/s  "
        f"d={format_delay_percent(params.delay_fraction)}  N={params.tactor_count}  D={params.spacing:g} mm"
    )
    if args.hold_only is None:
        print("onsets [s]: " + ", ".join(f"{onset:.4f}" for onset in schedule.onsets))
    for event in profile.events:
        print(f"  motor {event.motor}: contact {event.contact_start:.4f} .. {event.contact_end:.4f} s")
    print(f"overlap={'true' if profile.overlapping else 'false'} (critical delay {critical_delay(geometry):.4f})")
    print(f"v_local={summary.local_cm_s:.1f} cm/s  v_apparent={summary.apparent_cm_s:.1f} cm/s")
    return 0


def cmd_simulate(args) -> int:
    device = load_device(args)
    model = device.motor_model()
    check = validate_speed_cap(device.params(), model)
    print(f"speed cap {'pass' if check.passed else 'FAIL'}: margin {check.margin:.3f} rad/s")
    if not check.passed:
        raise ParameterError(f"angular velocity exceeds the motor speed cap by {-check.margin:.3f} rad/s")

    schedule = _build(device, args.hold_only)
    tracking = simulate_schedule(model, device.gains(), schedule)
    for motor, result in enumerate(tracking.results):
        print(
            f"motor {motor}: max |e|={result.max_abs_error:.5f} rad  rms={result.rms_error:.5f} rad  "
            f"saturated {result.saturation_fraction:.1%}"
        )

    if args.output:
        profile = contact_profile(schedule, device.geometry())
        export_tracking(schedule, profile, tracking, args.output, device.config_hash())
        print(f"Wrote tracking trace to {args.output}")

    failing = tracking.failing_motors(device.tracking_tolerance)
    if failing:
        raise TrackingFailure(
            f"motors {failing} exceed the {device.tracking_tolerance:g} rad tracking tolerance "
            f"(worst {tracking.max_abs_error:.4f} rad)"
        )
    return 0


def cmd_plan(args) -> int:
    seed = config.DEFAULT_SEED if args.seed is None else args.seed
    plan = generate_plan(args.study, seed, args.participant)
    output = _output_path(args.output, f"plan_s{args.study}_p{args.participant}.jsonl")
    save_plan(plan, output, load_device(args).config_hash())

    print(f"Wrote {len(plan)} trials to {output}")
    if plan.study == 1:
        print("location order: " + " -> ".join(plan.location_order()))
    else:
        print("spacing order [mm]: " + " -> ".join(f"{spacing:g}" for spacing in plan.spacing_order()))
    return 0


def cmd_run(args) -> int:
    device = load_device(args)
    geometry = device.geometry()
    plan = load_plan(args.plan)
    log = RatingLog(
        _output_path(args.log, f"ratings_s{plan.study}.jsonl"), device.config_hash(), plan.seed
    )

    present = None
    if args.stream_dir:
        def present(trial):
            params = trial.params()
            schedule = build_schedule(
                geometry, params, device.tick_rate, device.pre_roll, device.post_roll,
                device.sweep_direction, device.motor_model().speed_cap,
            )
            target = Path(args.stream_dir) / f"p{trial.participant}_trial{trial.index:03d}.csv"
            export_command_stream(schedule, contact_profile(schedule, geometry), str(target), device.config_hash())

    rated = run_plan(plan, log, geometry, present=present)
    print(f"{rated} trials rated; log at {log.file_path}")
    return 0


def cmd_analyze(args) -> int:
    records = []
    for path in args.logs:
        records.extend(load_records(path))
    records = [record for record in records if record.study == args.study]
    if not records:
        raise ConfigError(f"no study {args.study} ratings in {', '.join(args.logs)}")

    text = format_report(analyze_ratings(records, args.study, load_device(args).geometry()))
    print(text, end="")
    if args.output:
        target = Path(args.output)
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(text, encoding="utf-8")
        except OSError as e:
            raise ArtifactIOError(str(target), f"cannot write report: {e}") from e
    return 0

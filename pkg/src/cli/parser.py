"""
argparse definition of the hapticstroke command line
"""
import argparse

from .commands import cmd_analyze, cmd_plan, cmd_run, cmd_schedule, cmd_simulate, cmd_speeds
from .. import __version__
from ..study.plans import STUDIES


def _add_config(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="device config INI (default: $DEVICE_CONFIG or built-in values)")


def _add_actuation(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("actuation overrides")
    group.add_argument("--omega", help="angular velocity: rad/s or a pi fraction such as 2pi/3")
    group.add_argument("--delay", help="onset delay as a fraction (0.10) or percent (10%%)")
    group.add_argument("--tactors", type=int, help="number of tactors N")
    group.add_argument("--spacing", help="contact spacing D in mm")
    group.add_argument("--direction", type=int, choices=(1, -1), help="1 wrist to elbow, -1 elbow to wrist")
    group.add_argument("--tick-rate", dest="tick_rate", type=float, help="control rate in Hz")
    group.add_argument(
        "--hold-only", dest="hold_only", type=float, metavar="SECONDS",
        help="hold every motor at rest for SECONDS instead of stroking",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapticstroke",
        description="Stroke rendering, motor simulation and rating studies for a skin-slip tactor array",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    speeds = sub.add_parser("speeds", help="tabulate apparent stroke speeds")
    _add_config(speeds)
    speeds.add_argument("--omegas", help="comma-separated angular velocities (default: study values)")
    speeds.add_argument("--delays", help="comma-separated delays (default: 0%%..25%% in 5%% steps)")
    speeds.add_argument("--tactors", type=int, help="number of tactors N")
    speeds.add_argument("--spacings", help="comma-separated contact spacings in mm")
    speeds.add_argument("-o", "--output", help="CSV path (default: $OUTPUT_DIR/speeds.csv)")
    speeds.set_defaults(func=cmd_speeds)

    schedule = sub.add_parser("schedule", help="export a command stream and contact summary")
    _add_config(schedule)
    _add_actuation(schedule)
    schedule.add_argument("-o", "--output", help="CSV path (default: $OUTPUT_DIR/stream.csv)")
    schedule.set_defaults(func=cmd_schedule)

    simulate = sub.add_parser("simulate", help="simulate PID tracking of every motor")
    _add_config(simulate)
    _add_actuation(simulate)
    simulate.add_argument("--kp", type=float)
    simulate.add_argument("--ki", type=float)
    simulate.add_argument("--kd", type=float)
    simulate.add_argument("--open-loop", dest="open_loop", action="store_true", help="zero all gains")
    simulate.add_argument("--tolerance", type=float, help="max abs tracking error in rad")
    simulate.add_argument("-o", "--output", help="write the tracking trace CSV here")
    simulate.set_defaults(func=cmd_simulate)

    plan = sub.add_parser("plan", help="generate a trial plan")
    _add_config(plan)
    plan.add_argument("--study", type=int, choices=STUDIES, required=True)
    plan.add_argument("--seed", type=int, help="default: $DEFAULT_SEED")
    plan.add_argument("--participant", type=int, default=0)
    plan.add_argument("-o", "--output", help="JSONL path (default: $OUTPUT_DIR/plan_s<study>_p<participant>.jsonl)")
    plan.set_defaults(func=cmd_plan)

    run = sub.add_parser("run", help="present a plan and collect ratings")
    _add_config(run)
    run.add_argument("--plan", required=True, help="plan JSONL written by `plan`")
    run.add_argument("--log", help="rating log JSONL (default: $OUTPUT_DIR/ratings_s<study>.jsonl)")
    run.add_argument("--stream-dir", dest="stream_dir", help="also export each trial's command stream here")
    run.set_defaults(func=cmd_run)

    analyze = sub.add_parser("analyze", help="summaries and t-tests over rating logs")
    _add_config(analyze)
    analyze.add_argument("logs", nargs="+", help="rating log JSONL files")
    analyze.add_argument("--study", type=int, choices=STUDIES, required=True)
    analyze.add_argument("-o", "--output", help="also write the report here")
    analyze.set_defaults(func=cmd_analyze)

    return parser

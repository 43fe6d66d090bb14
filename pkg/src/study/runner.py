"""
Interactive trial session: present each planned trial, collect two Likert
ratings from the terminal and append them to the rating log.
"""
import logging
from typing import Callable, Optional

from .plans import Trial, TrialPlan
from .records import CONTINUITY_RANGE, PLEASANTNESS_RANGE, RatingLog, RatingRecord, check_rating
from ..kinematics import TactorGeometry, summarize_speeds
from ..kinematics.units import format_angular_velocity, format_delay_percent
from ..lib.errors import RatingValidationError

logger = logging.getLogger(__name__)

InputFn = Callable[[str], str]
OutputFn = Callable[[str], None]


def describe_trial(trial: Trial, geometry: TactorGeometry) -> str:
    summary = summarize_speeds(geometry, trial.params())
    return (
        f"Trial {trial.index + 1} (block {trial.block}, {trial.location}): "
        f"omega={format_angular_velocity(trial.angular_velocity)} rad/s, "
        f"d={format_delay_percent(trial.delay_fraction)}, N={trial.tactor_count}, D={trial.spacing:g} mm, "
        f"v_apparent={summary.apparent_cm_s:.1f} cm/s, overlap={'yes' if summary.overlapping else 'no'}"
    )


def prompt_rating(name: str, bounds, input_fn: InputFn, output_fn: OutputFn) -> int:
    """Ask until an integer within bounds is entered"""
    low, high = bounds
    while True:
        text = input_fn(f"{name} [{low}..{high}]: ").strip()
        try:
            return check_rating(name, int(text), bounds)
        except ValueError:
            output_fn(f"'{text}' is not a whole number, try again")
        except RatingValidationError as e:
            output_fn(f"{e}, try again")
        logger.warning(f"Re-prompting {name} after invalid entry {text!r}")


def run_plan(
    plan: TrialPlan,
    log: RatingLog,
    geometry: TactorGeometry,
    input_fn: InputFn = input,
    output_fn: OutputFn = print,
    present: Optional[Callable[[Trial], None]] = None,
) -> int:
    """
    Run every trial of the plan not already in the log for this participant.

    present(trial) is called before the ratings are asked for. Returns the
    number of trials rated in this session; end of input stops the session
    early and leaves the log resumable.
    """
    done = log.completed_trials(plan.study, plan.participant)
    pending = [trial for trial in plan.trials if trial.index not in done]
    if done:
        output_fn(f"Resuming: {len(done)} of {len(plan)} trials already rated")
    logger.info(f"Running {len(pending)} trials for participant {plan.participant} (study {plan.study})")

    rated = 0
    try:
        for trial in pending:
            output_fn(describe_trial(trial, geometry))
            if present is not None:
                present(trial)
            continuity = prompt_rating("continuity", CONTINUITY_RANGE, input_fn, output_fn)
            pleasantness = prompt_rating("pleasantness", PLEASANTNESS_RANGE, input_fn, output_fn)
            log.append(RatingRecord.from_trial(trial, continuity, pleasantness))
            rated += 1
            if trial.break_after:
                output_fn(f"Break: {trial.break_after}")
                input_fn("Press Enter when ready to continue ")
    except EOFError:
        output_fn(f"Input closed; {rated} trials rated this session, rerun to resume")
        logger.info(f"Session stopped early after {rated} trials")
    return rated

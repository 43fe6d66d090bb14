"""
Trial plans for the two rating studies

Study 1: N=5, D=20 mm, every (omega, delay) pair twice per forearm location,
all trials of one location before the other, 4 blocks of 30.
Study 2: N=4, d=10%, volar only, spacing sets of 10 trials ordered by a
balanced Latin square row, omega order shuffled inside each set.

Plans are written one trial per line as sorted-key JSON after a provenance
comment, so identical (seed, participant) pairs give byte-identical files.
"""
import json
import logging
from dataclasses import asdict, dataclass
from enum import Enum
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..kinematics import ActuationParams
from ..kinematics.units import STUDY_ANGULAR_VELOCITIES, STUDY_DELAY_FRACTIONS
from ..lib.errors import ArtifactIOError, ConfigError, ParameterError, RecordParseError
from ..lib.provenance import is_comment, provenance_header

logger = logging.getLogger(__name__)

STUDY1_TACTORS = 5
STUDY1_SPACING = 20.0
STUDY1_BLOCK_SIZE = 30
STUDY1_REPETITIONS = 2

STUDY2_TACTORS = 4
STUDY2_DELAY = 0.10
STUDY2_SPACINGS = (20.0, 30.0, 35.0, 40.0)
STUDY2_REPETITIONS = 2

STUDIES = (1, 2)


class Location(str, Enum):
    """Forearm side the tactors touch"""
    VOLAR = "volar"
    DORSAL = "dorsal"


@dataclass(frozen=True)
class Trial:
    """One stimulus presentation"""
    index: int  # 0-based position in the plan
    study: int
    participant: int
    block: int  # 1-based block (study 1) or spacing set (study 2)
    repetition: int  # 1-based presentation count of this condition
    angular_velocity: float
    delay_fraction: float
    tactor_count: int
    spacing: float
    location: str
    break_after: Optional[str] = None

    def params(self) -> ActuationParams:
        return ActuationParams(
            angular_velocity=self.angular_velocity,
            delay_fraction=self.delay_fraction,
            tactor_count=self.tactor_count,
            spacing=self.spacing,
        )

    def condition(self) -> Tuple:
        """Condition identity without presentation order"""
        return (self.location, self.spacing, self.angular_velocity, self.delay_fraction)


@dataclass(frozen=True)
class TrialPlan:
    study: int
    seed: int
    participant: int
    trials: Tuple[Trial, ...]

    def __len__(self) -> int:
        return len(self.trials)

    def blocks(self) -> Dict[int, List[Trial]]:
        grouped: Dict[int, List[Trial]] = {}
        for trial in self.trials:
            grouped.setdefault(trial.block, []).append(trial)
        return grouped

    def location_order(self) -> List[str]:
        order = []
        for trial in self.trials:
            if trial.location not in order:
                order.append(trial.location)
        return order

    def spacing_order(self) -> List[float]:
        order = []
        for trial in self.trials:
            if trial.spacing not in order:
                order.append(trial.spacing)
        return order


def _check_participant(participant_index: int) -> None:
    if int(participant_index) != participant_index or participant_index < 0:
        raise ParameterError(f"participant_index must be a non-negative integer, got {participant_index}")


def _rng(seed: int, *stream: int) -> np.random.Generator:
    # SeedSequence entropy must be non-negative
    return np.random.default_rng([int(seed) % 2**64, *stream])


def balanced_latin_square(n: int) -> List[List[int]]:
    """
    Williams design for even n: every condition appears once per position and
    immediately follows every other condition exactly once.
    """
    if n < 1:
        raise ParameterError(f"latin square order must be >= 1, got {n}")
    first = [0]
    low, high = 1, n - 1
    for position in range(1, n):
        if position % 2:
            first.append(low)
            low += 1
        else:
            first.append(high)
            high -= 1
    return [[(value + row) % n for value in first] for row in range(n)]


def generate_study1_plan(seed: int, participant_index: int) -> TrialPlan:
    """
    120 trials: 60 per location, each (omega, delay) twice, in seeded random order.

    Even participant indices start on the volar side, odd ones on the dorsal side.
    """
    _check_participant(participant_index)
    locations = [Location.VOLAR, Location.DORSAL]
    if participant_index % 2:
        locations.reverse()

    conditions = list(product(STUDY_DELAY_FRACTIONS, STUDY_ANGULAR_VELOCITIES, range(1, STUDY1_REPETITIONS + 1)))
    trials: List[Trial] = []
    for location in locations:
        rng = _rng(seed, participant_index, 1, list(Location).index(location))
        for position in rng.permutation(len(conditions)):
            delay, omega, repetition = conditions[position]
            trials.append(
                Trial(
                    index=len(trials),
                    study=1,
                    participant=participant_index,
                    block=len(trials) // STUDY1_BLOCK_SIZE + 1,
                    repetition=repetition,
                    angular_velocity=omega,
                    delay_fraction=delay,
                    tactor_count=STUDY1_TACTORS,
                    spacing=STUDY1_SPACING,
                    location=location.value,
                )
            )

    block_count = len(trials) // STUDY1_BLOCK_SIZE
    for block in range(1, block_count):
        last = block * STUDY1_BLOCK_SIZE - 1
        next_location = trials[last + 1].location
        note = "2 min break, realign tactors"
        if next_location != trials[last].location:
            note = f"2 min break, move the forearm to the {next_location} side and realign tactors"
        trials[last] = _with_break(trials[last], note)

    plan = TrialPlan(study=1, seed=seed, participant=participant_index, trials=tuple(trials))
    logger.info(f"Generated study 1 plan: {len(plan)} trials, order {plan.location_order()}, seed {seed}")
    return plan


def generate_study2_plan(seed: int, participant_index: int) -> TrialPlan:
    """
    40 trials in 4 spacing sets of 10; spacing order is row
    participant_index mod 4 of the balanced Latin square.
    """
    _check_participant(participant_index)
    row = balanced_latin_square(len(STUDY2_SPACINGS))[participant_index % len(STUDY2_SPACINGS)]
    conditions = list(product(STUDY_ANGULAR_VELOCITIES, range(1, STUDY2_REPETITIONS + 1)))

    trials: List[Trial] = []
    for set_number, spacing_index in enumerate(row, start=1):
        spacing = STUDY2_SPACINGS[spacing_index]
        rng = _rng(seed, participant_index, 2, set_number)
        for position in rng.permutation(len(conditions)):
            omega, repetition = conditions[position]
            trials.append(
                Trial(
                    index=len(trials),
                    study=2,
                    participant=participant_index,
                    block=set_number,
                    repetition=repetition,
                    angular_velocity=omega,
                    delay_fraction=STUDY2_DELAY,
                    tactor_count=STUDY2_TACTORS,
                    spacing=spacing,
                    location=Location.VOLAR.value,
                )
            )
        if set_number < len(row):
            next_spacing = STUDY2_SPACINGS[row[set_number]]
            trials[-1] = _with_break(
                trials[-1], f"2 min break, forearm out, set spacing to {next_spacing:g} mm"
            )

    plan = TrialPlan(study=2, seed=seed, participant=participant_index, trials=tuple(trials))
    logger.info(f"Generated study 2 plan: {len(plan)} trials, spacing order {plan.spacing_order()}, seed {seed}")
    return plan


def generate_plan(study: int, seed: int, participant_index: int) -> TrialPlan:
    if study == 1:
        return generate_study1_plan(seed, participant_index)
    if study == 2:
        return generate_study2_plan(seed, participant_index)
    raise ConfigError(f"study must be one of {STUDIES}, got {study!r}")


def _with_break(trial: Trial, note: str) -> Trial:
    values = asdict(trial)
    values["break_after"] = note
    return Trial(**values)


def plan_lines(plan: TrialPlan) -> List[str]:
    """JSON lines of a plan, one per trial"""
    lines = []
    for trial in plan.trials:
        record = asdict(trial)
        record["seed"] = plan.seed
        lines.append(json.dumps(record, sort_keys=True))
    return lines


def save_plan(plan: TrialPlan, path: str, config_hash: str = "-") -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="\n") as f:
            f.write(provenance_header(config_hash, plan.seed) + "\n")
            for line in plan_lines(plan):
                f.write(line + "\n")
    except OSError as e:
        raise ArtifactIOError(str(target), f"cannot write plan: {e}") from e
    logger.info(f"Saved {len(plan)}-trial plan to {target}")
    return target


def load_plan(path: str) -> TrialPlan:
    """
    Raises:
        RecordParseError: malformed or inconsistent lines, with line numbers
        ArtifactIOError: unreadable file
    """
    source = str(path)
    trials: List[Trial] = []
    seed = None
    try:
        with open(source, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip() or is_comment(line):
                    continue
                try:
                    record = json.loads(line)
                    line_seed = record.pop("seed")
                    trial = Trial(**record)
                except (ValueError, KeyError, TypeError) as e:
                    raise RecordParseError(source, line_number, f"not a trial record: {e}") from e
                if seed is None:
                    seed = line_seed
                elif line_seed != seed or trial.participant != trials[0].participant or trial.study != trials[0].study:
                    raise RecordParseError(source, line_number, "trial belongs to a different plan")
                if trial.index != len(trials):
                    raise RecordParseError(source, line_number, f"trial index {trial.index}, expected {len(trials)}")
                trials.append(trial)
    except OSError as e:
        raise ArtifactIOError(source, f"cannot read plan: {e}") from e

    if not trials:
        raise RecordParseError(source, 1, "plan has no trials")
    return TrialPlan(study=trials[0].study, seed=seed, participant=trials[0].participant, trials=tuple(trials))

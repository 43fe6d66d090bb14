"""
Likert rating records and the append-only rating log
"""
import json
import math
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import List, Optional, Set

from .plans import Trial
from ..lib.errors import ArtifactIOError, RatingValidationError, RecordParseError
from ..lib.provenance import is_comment, provenance_header

logger = logging.getLogger(__name__)

CONTINUITY_RANGE = (1, 7)  # 1 = discrete, 7 = continuous
PLEASANTNESS_RANGE = (-7, 7)  # -7 very unpleasant, 0 neutral, +7 very pleasant
NEUTRAL_PLEASANTNESS = 0


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def check_rating(name: str, value, bounds) -> int:
    """Return value as int if it is an integer within bounds, else raise naming the field"""
    low, high = bounds
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or int(value) != value:
        raise RatingValidationError(name, value, f"integers {low}..{high}")
    if not low <= value <= high:
        raise RatingValidationError(name, value, f"integers {low}..{high}")
    return int(value)


@dataclass(frozen=True)
class RatingRecord:
    """Ratings given for one completed trial"""
    study: int
    participant: int
    trial_index: int
    angular_velocity: float
    delay_fraction: float
    tactor_count: int
    spacing: float
    location: str
    continuity: int
    pleasantness: int
    timestamp: str = field(default_factory=_utc_now)

    def __post_init__(self):
        check_rating("continuity", self.continuity, CONTINUITY_RANGE)
        check_rating("pleasantness", self.pleasantness, PLEASANTNESS_RANGE)

    @classmethod
    def from_trial(
        cls, trial: Trial, continuity: int, pleasantness: int, timestamp: Optional[str] = None
    ) -> "RatingRecord":
        return cls(
            study=trial.study,
            participant=trial.participant,
            trial_index=trial.index,
            angular_velocity=trial.angular_velocity,
            delay_fraction=trial.delay_fraction,
            tactor_count=trial.tactor_count,
            spacing=trial.spacing,
            location=trial.location,
            continuity=continuity,
            pleasantness=pleasantness,
            timestamp=timestamp or _utc_now(),
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


class RatingLog:
    """
    Line-delimited rating records on disk.

    Each append is flushed immediately so an interrupted session loses at most
    the trial in progress.
    """

    def __init__(self, path: str, config_hash: str = "-", seed: Optional[int] = None):
        self.file_path = Path(path)
        self.config_hash = config_hash
        self.seed = seed

    def exists(self) -> bool:
        return self.file_path.exists()

    def append(self, record: RatingRecord) -> None:
        try:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
            new_file = not self.file_path.exists() or self.file_path.stat().st_size == 0
            with open(self.file_path, "a", encoding="utf-8", newline="\n") as f:
                if new_file:
                    f.write(provenance_header(self.config_hash, self.seed) + "\n")
                f.write(record.to_json() + "\n")
        except OSError as e:
            raise ArtifactIOError(str(self.file_path), f"cannot append rating: {e}") from e
        logger.debug(f"Logged ratings for trial {record.trial_index} of participant {record.participant}")

    def load(self) -> List[RatingRecord]:
        """
        Raises:
            RecordParseError: malformed JSON or out-of-range ratings, with line number
            ArtifactIOError: unreadable file
        """
        return load_records(str(self.file_path))

    def completed_trials(self, study: int, participant: int) -> Set[int]:
        if not self.exists():
            return set()
        return {
            record.trial_index
            for record in self.load()
            if record.study == study and record.participant == participant
        }


def load_records(path: str) -> List[RatingRecord]:
    records = []
    try:
        with open(path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip() or is_comment(line):
                    continue
                try:
                    records.append(RatingRecord(**json.loads(line)))
                except RatingValidationError as e:
                    raise RecordParseError(path, line_number, str(e)) from e
                except (ValueError, TypeError) as e:
                    raise RecordParseError(path, line_number, f"not a rating record: {e}") from e
    except OSError as e:
        raise ArtifactIOError(path, f"cannot read rating log: {e}") from e
    logger.info(f"Loaded {len(records)} rating records from {path}")
    return records

"""
Speed table layout and CSV export

Rows are angular velocities (exact pi-fraction labels), columns are delays in
percent (prefixed by spacing when more than one spacing is tabulated), cells are
apparent speeds in cm/s with one decimal. A trailing column holds local speed.
"""
import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd

from .speeds import SpeedSummary
from .units import format_angular_velocity, format_delay_percent
from ..lib.errors import ArtifactIOError
from ..lib.provenance import provenance_header

logger = logging.getLogger(__name__)

ROW_HEADER = "omega_rad_s"
LOCAL_COLUMN = "local_cm_s"


def _column_label(cell: SpeedSummary, multiple_spacings: bool) -> str:
    delay = format_delay_percent(cell.delay_fraction)
    return f"D{cell.spacing:g}mm@{delay}" if multiple_spacings else delay


def speed_frame(cells: List[SpeedSummary]) -> pd.DataFrame:
    """Pivot speed cells into the published table layout (values in cm/s, unrounded)"""
    multiple_spacings = len({cell.spacing for cell in cells}) > 1
    rows = [
        {
            ROW_HEADER: format_angular_velocity(cell.angular_velocity),
            "omega": cell.angular_velocity,
            "column": _column_label(cell, multiple_spacings),
            "apparent_cm_s": cell.apparent_cm_s,
            LOCAL_COLUMN: cell.local_cm_s,
        }
        for cell in cells
    ]
    long = pd.DataFrame(rows)
    row_order = list(dict.fromkeys(long[ROW_HEADER]))
    column_order = list(dict.fromkeys(long["column"]))

    table = long.pivot(index=ROW_HEADER, columns="column", values="apparent_cm_s")
    table = table.reindex(index=row_order, columns=column_order)
    table[LOCAL_COLUMN] = long.groupby(ROW_HEADER)[LOCAL_COLUMN].first().reindex(row_order)
    table.columns.name = None
    return table


def write_speed_csv(
    cells: List[SpeedSummary],
    destination: str,
    config_hash: str = "-",
    seed: Optional[int] = None,
) -> Path:
    """Write the speed table as CSV with a provenance comment line"""
    path = Path(destination)
    table = speed_frame(cells)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(provenance_header(config_hash, seed) + "\n")
            table.to_csv(f, float_format="%.1f")
    except OSError as e:
        raise ArtifactIOError(str(path), f"cannot write speed table: {e}") from e

    logger.info(f"Wrote {len(cells)}-cell speed table to {path}")
    return path


def read_speed_csv(source: str) -> pd.DataFrame:
    """Read a speed table written by write_speed_csv"""
    try:
        return pd.read_csv(source, comment="#", index_col=0)
    except (OSError, pd.errors.ParserError) as e:
        raise ArtifactIOError(str(source), f"cannot read speed table: {e}") from e

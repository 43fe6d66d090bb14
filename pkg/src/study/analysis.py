"""
Descriptive summaries and t-tests over rating records

Means with standard errors per condition group, one-sample t-tests of
pleasantness against the neutral rating, and Bonferroni-adjusted pairwise
comparisons across delay (study 1) or spacing (study 2) groups.
"""
import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Dict, Hashable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy import stats
from statsmodels.stats.multitest import multipletests

from .records import NEUTRAL_PLEASANTNESS, RatingRecord
from ..kinematics import ActuationParams, TactorGeometry, derive_geometry, summarize_speeds
from ..lib.errors import DegenerateSampleError, ParameterError

logger = logging.getLogger(__name__)

ALPHA = 0.05
RATING_FIELDS = ("continuity", "pleasantness")


@dataclass(frozen=True)
class GroupSummary:
    key: Tuple
    mean: float
    sem: Optional[float]  # None when n == 1
    n: int


@dataclass(frozen=True)
class TTestResult:
    statistic: float
    df: float
    pvalue: float


@dataclass(frozen=True)
class PairwiseComparison:
    first: Hashable
    second: Hashable
    test: str  # "paired" or "welch"
    statistic: Optional[float] = None
    df: Optional[float] = None
    raw_p: Optional[float] = None
    adjusted_p: Optional[float] = None
    significant: bool = False
    error: Optional[str] = None  # set for degenerate pairs


APPARENT_SPEED = "apparent_cm_s"


def records_frame(records: Sequence[RatingRecord], geometry: Optional[TactorGeometry] = None) -> pd.DataFrame:
    """
    One row per record. With a geometry, adds the apparent stroke speed of each
    record's condition (cm/s, rounded to 0.1).
    """
    frame = pd.DataFrame([asdict(record) for record in records])
    if geometry is not None and not frame.empty:
        conditions = ["angular_velocity", "delay_fraction", "tactor_count", "spacing"]
        speeds = {
            key: round(summarize_speeds(geometry, ActuationParams(*key)).apparent_cm_s, 1)
            for key in frame[conditions].drop_duplicates().itertuples(index=False, name=None)
        }
        frame[APPARENT_SPEED] = [speeds[key] for key in frame[conditions].itertuples(index=False, name=None)]
    return frame


def summarize(
    records: Sequence[RatingRecord],
    group_by: Sequence[str],
    value: str = "continuity",
    geometry: Optional[TactorGeometry] = None,
) -> List[GroupSummary]:
    """
    Mean, standard error (sample sd / sqrt(n)) and n of value per group.
    Grouping by apparent_cm_s needs the tactor geometry.

    Raises:
        ParameterError: no records, no grouping factors, or unknown columns
    """
    if not records:
        raise ParameterError("cannot summarize an empty record set")
    factors = list(group_by)
    if not factors:
        raise ParameterError("group_by must name at least one factor")
    frame = records_frame(records, geometry)
    missing = [name for name in factors + [value] if name not in frame.columns]
    if missing:
        raise ParameterError(f"unknown record fields: {', '.join(missing)}")

    grouped = frame.groupby(factors, sort=True)[value].agg(["mean", "std", "count"])
    summaries = []
    for key, row in grouped.iterrows():
        n = int(row["count"])
        sem = float(row["std"]) / math.sqrt(n) if n > 1 else None
        summaries.append(
            GroupSummary(key=key if isinstance(key, tuple) else (key,), mean=float(row["mean"]), sem=sem, n=n)
        )
    return summaries


def one_sample_t(values: Sequence[float], mu0: float = 0.0) -> TTestResult:
    """
    Two-sided one-sample t-test of the mean against mu0.

    Raises:
        DegenerateSampleError: fewer than two values or zero variance
    """
    sample = np.asarray(values, dtype=float)
    if sample.size < 2:
        raise DegenerateSampleError(f"one-sample t-test needs n >= 2, got {sample.size}")
    if np.std(sample, ddof=1) == 0:
        raise DegenerateSampleError("one-sample t-test on a sample with zero variance")
    result = stats.ttest_1samp(sample, mu0)
    return TTestResult(statistic=float(result.statistic), df=float(sample.size - 1), pvalue=float(result.pvalue))


def bonferroni_adjust(raw_p: Sequence[float], family_size: Optional[int] = None) -> np.ndarray:
    """
    min(1, m * p) for each p-value. m is family_size when given (p-values of
    untested members count as 1), otherwise the number of p-values.
    """
    m = len(raw_p) if family_size is None else family_size
    if m < len(raw_p):
        raise ParameterError(f"family_size {m} is smaller than the {len(raw_p)} p-values given")
    if len(raw_p) == 0:
        return np.array([])
    padded = np.ones(m)
    padded[:len(raw_p)] = raw_p
    _, adjusted, _, _ = multipletests(padded, alpha=ALPHA, method="bonferroni")
    return adjusted[:len(raw_p)]


def _paired_keys(
    first: Hashable, second: Hashable, pairing: Optional[Mapping[Hashable, Sequence[Hashable]]]
) -> Optional[Tuple[List[Hashable], List[Hashable]]]:
    if pairing is None or first not in pairing or second not in pairing:
        return None
    a, b = list(pairing[first]), list(pairing[second])
    if len(a) != len(b) or len(set(a)) != len(a) or set(a) != set(b):
        return None
    return a, b


def _compare(
    first: Hashable, second: Hashable, a: np.ndarray, b: np.ndarray, keys
) -> PairwiseComparison:
    if keys is not None:
        order_b = {key: i for i, key in enumerate(keys[1])}
        aligned_b = np.array([b[order_b[key]] for key in keys[0]])
        diff = a - aligned_b
        if diff.size < 2 or np.std(diff, ddof=1) == 0:
            return PairwiseComparison(first, second, "paired", error="paired differences have zero variance or n < 2")
        result = stats.ttest_rel(a, aligned_b)
        return PairwiseComparison(
            first, second, "paired",
            statistic=float(result.statistic), df=float(diff.size - 1), raw_p=float(result.pvalue),
        )

    if a.size < 2 or b.size < 2:
        return PairwiseComparison(first, second, "welch", error="each group needs n >= 2")
    if np.std(a, ddof=1) == 0 and np.std(b, ddof=1) == 0:
        return PairwiseComparison(first, second, "welch", error="both groups have zero variance")
    result = stats.ttest_ind(a, b, equal_var=False)
    return PairwiseComparison(
        first, second, "welch",
        statistic=float(result.statistic), df=float(result.df), raw_p=float(result.pvalue),
    )


def pairwise_bonferroni(
    groups: Mapping[Hashable, Sequence[float]],
    pairing: Optional[Mapping[Hashable, Sequence[Hashable]]] = None,
) -> List[PairwiseComparison]:
    """
    t-test every unordered pair of groups and Bonferroni-adjust the p-values.

    A pair is tested paired when pairing gives both groups the same set of
    unique keys (one per value, e.g. participant ids); otherwise Welch.
    Degenerate pairs carry an error message and no p-value; every pair still
    counts toward the family, so m = k(k-1)/2 for k groups.

    Raises:
        ParameterError: fewer than two groups
    """
    if len(groups) < 2:
        raise ParameterError(f"pairwise comparisons need at least 2 groups, got {len(groups)}")

    comparisons = []
    for first, second in combinations(list(groups), 2):
        a = np.asarray(groups[first], dtype=float)
        b = np.asarray(groups[second], dtype=float)
        comparison = _compare(first, second, a, b, _paired_keys(first, second, pairing))
        if comparison.error:
            logger.warning(f"Pair {first} vs {second}: {comparison.error}")
        comparisons.append(comparison)

    tested = [i for i, comparison in enumerate(comparisons) if comparison.raw_p is not None]
    adjusted = bonferroni_adjust([comparisons[i].raw_p for i in tested], family_size=len(comparisons))
    for i, p in zip(tested, adjusted):
        c = comparisons[i]
        comparisons[i] = PairwiseComparison(
            c.first, c.second, c.test, c.statistic, c.df, c.raw_p,
            adjusted_p=float(p), significant=bool(p < ALPHA),
        )
    return comparisons


@dataclass
class AnalysisReport:
    study: int
    factor: str  # "delay_fraction" or "spacing"
    summaries: Dict[str, Dict[str, List[GroupSummary]]] = field(default_factory=dict)
    neutral_tests: Dict[Hashable, object] = field(default_factory=dict)  # TTestResult or error text
    pairwise: Dict[str, List[PairwiseComparison]] = field(default_factory=dict)
    participants: int = 0
    records: int = 0


def _factor_groups(
    frame: pd.DataFrame, factor: str, value: str
) -> Tuple[Dict[Hashable, List[float]], Optional[Dict[Hashable, List[Hashable]]]]:
    """
    Values per factor level. With several participants each participant
    contributes their mean per level, keyed by participant for pairing.
    """
    if frame["participant"].nunique() < 2:
        return {level: sub[value].tolist() for level, sub in frame.groupby(factor, sort=True)}, None

    means = frame.groupby([factor, "participant"], sort=True)[value].mean()
    groups, pairing = {}, {}
    for level, sub in means.groupby(level=0, sort=True):
        groups[level] = sub.tolist()
        pairing[level] = sub.index.get_level_values(1).tolist()
    return groups, pairing


def analyze_ratings(
    records: Sequence[RatingRecord], study: int, geometry: Optional[TactorGeometry] = None
) -> AnalysisReport:
    """
    Grouped summaries (including by apparent stroke speed), pleasantness vs
    neutral and pairwise tests across the main factor. geometry defaults to
    the standard tactor geometry.
    """
    if not records:
        raise ParameterError("no rating records to analyze")
    if geometry is None:
        geometry = derive_geometry()
    factor = "delay_fraction" if study == 1 else "spacing"
    frame = records_frame(records)
    report = AnalysisReport(
        study=study, factor=factor, participants=int(frame["participant"].nunique()), records=len(records)
    )

    groupings = {
        factor: [factor],
        "angular_velocity": ["angular_velocity"],
        f"{factor} x angular_velocity": [factor, "angular_velocity"],
        APPARENT_SPEED: [APPARENT_SPEED],
    }
    if study == 1:
        groupings["location"] = ["location"]
    for value in RATING_FIELDS:
        report.summaries[value] = {name: summarize(records, by, value, geometry) for name, by in groupings.items()}

    for level, sub in frame.groupby(factor, sort=True):
        try:
            report.neutral_tests[level] = one_sample_t(sub["pleasantness"].tolist(), NEUTRAL_PLEASANTNESS)
        except DegenerateSampleError as e:
            logger.warning(f"Pleasantness t-test at {factor}={level}: {e}")
            report.neutral_tests[level] = str(e)

    for value in RATING_FIELDS:
        groups, pairing = _factor_groups(frame, factor, value)
        if len(groups) >= 2:
            report.pairwise[value] = pairwise_bonferroni(groups, pairing)

    logger.info(f"Analyzed {len(records)} records from {report.participants} participants (study {study})")
    return report


def _level_label(factor: str, level) -> str:
    if factor == "delay_fraction":
        return f"{level * 100:g}%"
    if factor == "spacing":
        return f"{level:g}mm"
    return f"{level:.4f}"


def format_report(report: AnalysisReport) -> str:
    lines = [f"Study {report.study}: {report.records} ratings from {report.participants} participants", ""]
    for value, by_grouping in report.summaries.items():
        for grouping, summaries in by_grouping.items():
            lines.append(f"{value} by {grouping}")
            for summary in summaries:
                sem = "n/a" if summary.sem is None else f"{summary.sem:.3f}"
                key = ", ".join(str(part) for part in summary.key)
                lines.append(f"  {key:<32} mean={summary.mean:6.3f}  se={sem:>6}  n={summary.n}")
            lines.append("")

    lines.append(f"pleasantness vs neutral ({NEUTRAL_PLEASANTNESS}) by {report.factor}")
    for level, result in report.neutral_tests.items():
        label = _level_label(report.factor, level)
        if isinstance(result, TTestResult):
            lines.append(f"  {label:<10} t({result.df:g})={result.statistic:7.3f}  p={result.pvalue:.4g}")
        else:
            lines.append(f"  {label:<10} degenerate sample: {result}")
    lines.append("")

    for value, comparisons in report.pairwise.items():
        lines.append(f"{value} pairwise by {report.factor} (Bonferroni)")
        for c in comparisons:
            pair = f"{_level_label(report.factor, c.first)} vs {_level_label(report.factor, c.second)}"
            if c.error:
                lines.append(f"  {pair:<20} {c.test:<6} degenerate: {c.error}")
            else:
                mark = " *" if c.significant else ""
                lines.append(
                    f"  {pair:<20} {c.test:<6} t={c.statistic:7.3f}  p={c.raw_p:.4g}  p_adj={c.adjusted_p:.4g}{mark}"
                )
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"

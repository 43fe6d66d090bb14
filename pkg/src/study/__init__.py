"""
Rating-study trial plans, rating records and statistics
"""
from .plans import (
    Location,
    Trial,
    TrialPlan,
    balanced_latin_square,
    generate_study1_plan,
    generate_study2_plan,
    generate_plan,
    save_plan,
    load_plan,
)
from .records import RatingRecord, RatingLog, load_records
from .analysis import (
    GroupSummary,
    TTestResult,
    PairwiseComparison,
    AnalysisReport,
    summarize,
    one_sample_t,
    pairwise_bonferroni,
    bonferroni_adjust,
    analyze_ratings,
    format_report,
)
from .runner import run_plan, describe_trial

__all__ = [
    'Location', 'Trial', 'TrialPlan', 'balanced_latin_square', 'generate_study1_plan',
    'generate_study2_plan', 'generate_plan', 'save_plan', 'load_plan',
    'RatingRecord', 'RatingLog', 'load_records',
    'GroupSummary', 'TTestResult', 'PairwiseComparison', 'AnalysisReport', 'summarize',
    'one_sample_t', 'pairwise_bonferroni', 'bonferroni_adjust', 'analyze_ratings', 'format_report',
    'run_plan', 'describe_trial',
]

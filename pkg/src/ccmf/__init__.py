"""Cybersecurity capability maturity assessment engine.

Assess an organisation against a tiered catalog of practices and metrics,
derive per-domain and overall maturity scores with a replayable calculation
trace, and report the gaps that matter most.
"""

from .catalog import (
    Band,
    Catalog,
    Direction,
    Domain,
    DomainKind,
    Metric,
    MetricKind,
    Practice,
    Tier,
    TierLevel,
    ValidationReport,
    builtin_catalog,
    catalog_to_dict,
    catalog_to_json,
    parse_catalog,
    validate_catalog,
)
from .assessment import (
    Assessment,
    CompletenessSummary,
    DomainSelection,
    Evaluation,
    FactorScores,
    Rating,
    RatingValue,
    WeightProfile,
    completeness,
    create_assessment,
    evaluate_metric_qualitative,
    evaluate_metric_quantitative,
    rate_practice,
    set_target_tier,
    set_weight_profile,
)
from .scoring import (
    DomainScoreBreakdown,
    MaturityLevel,
    ScoreReport,
    TraceStep,
    derive_weights,
    display_number,
    domain_score,
    maturity_level,
    metric_achievement_score,
    normalise_totals,
    overall_maturity_score,
    practice_implementation_score,
    replay_step,
    replay_trace,
    report_to_dict,
    report_to_json,
    score_assessment,
)
from .reporting import (
    ChartDataset,
    GapItem,
    GapReport,
    chart_data,
    export,
    gap_analysis,
)
from .store import Store

__version__ = "0.1.0"

__all__ = [
    "Assessment",
    "Band",
    "Catalog",
    "ChartDataset",
    "CompletenessSummary",
    "Direction",
    "Domain",
    "DomainKind",
    "DomainScoreBreakdown",
    "DomainSelection",
    "Evaluation",
    "FactorScores",
    "GapItem",
    "GapReport",
    "MaturityLevel",
    "Metric",
    "MetricKind",
    "Practice",
    "Rating",
    "RatingValue",
    "ScoreReport",
    "Store",
    "Tier",
    "TierLevel",
    "TraceStep",
    "ValidationReport",
    "WeightProfile",
    "builtin_catalog",
    "catalog_to_dict",
    "catalog_to_json",
    "chart_data",
    "completeness",
    "create_assessment",
    "derive_weights",
    "display_number",
    "domain_score",
    "evaluate_metric_qualitative",
    "evaluate_metric_quantitative",
    "export",
    "gap_analysis",
    "maturity_level",
    "metric_achievement_score",
    "normalise_totals",
    "overall_maturity_score",
    "parse_catalog",
    "practice_implementation_score",
    "rate_practice",
    "replay_step",
    "replay_trace",
    "report_to_dict",
    "report_to_json",
    "score_assessment",
    "set_target_tier",
    "set_weight_profile",
    "validate_catalog",
]

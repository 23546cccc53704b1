"""Maturity scoring: PIS, MAS, DS, weights, OMS, levels, and the audit trace.

All scores live on a 0-100 scale:

* PIS — practice implementation score: the sum of 0-2 ratings over every
  practice in cumulative scope, normalised by the maximum (2 per practice).
* MAS — metric achievement score: the sum of 0-3 metric points in scope,
  normalised by the maximum (3 per metric).
* DS  — domain score: the arithmetic mean of PIS and MAS.
* OMS — overall maturity score: the weighted sum of domain scores, with
  weights derived from four 1-3 importance factors per domain (or equal
  weights when no profile is supplied).

Levels: Initial for scores up to 33, Managed above 33 up to 66, Optimized
above 66. Boundaries are compared on the unrounded value; rounding happens
only in display strings.

Every arithmetic step lands in the trace with its inputs, so the whole
report can be replayed and verified number by number.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Mapping, Optional, Sequence

from .assessment import (
    Assessment,
    DomainSelection,
    WeightProfile,
    missing_items,
    scoped_metric_ids,
    scoped_practice_ids,
    utc_now_rfc3339,
)
from .catalog import Catalog, Domain, TierLevel
from .errors import (
    CatalogMismatch,
    ExtraDomain,
    Incomplete,
    MissingDomain,
    MissingEvaluations,
    MissingRatings,
    OutOfRange,
    UnknownDomain,
    WeightSumInvalid,
)

REPORT_FORMAT_VERSION = "1"

MAX_RATING = 2    # Fully Implemented
MAX_POINTS = 3    # top metric band / rubric level

LEVEL_INITIAL_MAX = 33.0
LEVEL_MANAGED_MAX = 66.0


class MaturityLevel(enum.IntEnum):
    """Maturity bands, totally ordered."""

    INITIAL = 1
    MANAGED = 2
    OPTIMIZED = 3

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def from_label(cls, label: str) -> "MaturityLevel":
        return cls[label.upper()]


@dataclass(frozen=True)
class TraceStep:
    """One recorded calculation: enough inputs to redo the arithmetic."""

    name: str
    operation: str
    inputs: dict[str, Any]
    result: Any
    note: Optional[str] = None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "operation": self.operation,
            "inputs": self.inputs,
            "result": self.result,
        }
        if self.note is not None:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class DomainScoreBreakdown:
    domain_id: str
    domain_name: str
    target_tier: TierLevel
    pis: float
    mas: float
    ds: float
    level: MaturityLevel
    weight: float
    pis_numerator: int
    pis_denominator: int
    mas_numerator: int
    mas_denominator: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "domain_id": self.domain_id,
            "domain_name": self.domain_name,
            "target_tier": self.target_tier.token,
            "pis": number_field(self.pis),
            "mas": number_field(self.mas),
            "ds": number_field(self.ds),
            "level": self.level.label,
            "weight": weight_field(self.weight),
            "pis_numerator": self.pis_numerator,
            "pis_denominator": self.pis_denominator,
            "mas_numerator": self.mas_numerator,
            "mas_denominator": self.mas_denominator,
        }


@dataclass(frozen=True)
class ScoreReport:
    assessment_id: str
    catalog_id: str
    catalog_version: str
    generated_at: str
    breakdowns: tuple[DomainScoreBreakdown, ...]
    oms: float
    overall_level: MaturityLevel
    trace: tuple[TraceStep, ...]

    def breakdown(self, domain_id: str) -> DomainScoreBreakdown:
        for b in self.breakdowns:
            if b.domain_id == domain_id:
                return b
        raise KeyError(domain_id)


def display_number(value: float, places: int = 2) -> str:
    """Round half-up to ``places`` decimals for display; full precision stays in ``value``."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def number_field(value: float) -> dict[str, Any]:
    """JSON form of a score: exact value plus the 2-decimal display string."""
    return {"value": value, "display": display_number(value)}


def weight_field(value: float) -> dict[str, Any]:
    """Weights additionally carry a percentage display so clients never rescale."""
    return {
        "value": value,
        "display": display_number(value),
        "percent_display": display_number(100.0 * value),
    }


# ---------------------------------------------------------------------------
# Elementary scoring operations
# ---------------------------------------------------------------------------

def practice_implementation_score(
    selection: DomainSelection, domain: Domain, missing_as_zero: bool = False
) -> tuple[float, TraceStep]:
    """Normalised practice ratings over cumulative scope, as a 0-100 score.

    Strict by default: every in-scope practice must be rated. With
    ``missing_as_zero`` unrated practices contribute 0 points and are
    flagged in the trace step.
    """
    required = scoped_practice_ids(domain, selection.target_tier)
    if not required:
        raise ValueError(f"domain {domain.domain_id!r} has no practices in scope")
    unrated = [pid for pid in required if pid not in selection.ratings]
    if unrated and not missing_as_zero:
        raise MissingRatings(
            f"unrated practices in {domain.domain_id}: {', '.join(unrated)}", details=unrated
        )
    points = {
        pid: (int(selection.ratings[pid].value) if pid in selection.ratings else 0)
        for pid in required
    }
    numerator = sum(points.values())
    denominator = MAX_RATING * len(required)
    pis = 100.0 * numerator / denominator
    inputs: dict[str, Any] = {
        "domain_id": domain.domain_id,
        "target_tier": selection.target_tier.token,
        "points_by_practice": points,
        "practice_count": len(required),
        "numerator": numerator,
        "denominator": denominator,
    }
    if unrated:
        inputs["missing_treated_as_zero"] = unrated
    step = TraceStep(
        name=f"pis[{domain.domain_id}]",
        operation="practice_implementation_score",
        inputs=inputs,
        result=pis,
    )
    return pis, step


def metric_achievement_score(
    selection: DomainSelection, domain: Domain, missing_as_zero: bool = False
) -> tuple[float, TraceStep]:
    """Normalised metric points over cumulative scope, as a 0-100 score."""
    required = scoped_metric_ids(domain, selection.target_tier)
    if not required:
        raise ValueError(f"domain {domain.domain_id!r} has no metrics in scope")
    unevaluated = [mid for mid in required if mid not in selection.evaluations]
    if unevaluated and not missing_as_zero:
        raise MissingEvaluations(
            f"unevaluated metrics in {domain.domain_id}: {', '.join(unevaluated)}",
            details=unevaluated,
        )
    points = {
        mid: (selection.evaluations[mid].points if mid in selection.evaluations else 0)
        for mid in required
    }
    numerator = sum(points.values())
    denominator = MAX_POINTS * len(required)
    mas = 100.0 * numerator / denominator
    inputs: dict[str, Any] = {
        "domain_id": domain.domain_id,
        "target_tier": selection.target_tier.token,
        "points_by_metric": points,
        "metric_count": len(required),
        "numerator": numerator,
        "denominator": denominator,
    }
    if unevaluated:
        inputs["missing_treated_as_zero"] = unevaluated
    step = TraceStep(
        name=f"mas[{domain.domain_id}]",
        operation="metric_achievement_score",
        inputs=inputs,
        result=mas,
    )
    return mas, step


def domain_score(pis: float, mas: float) -> float:
    """Arithmetic mean of the practice and metric scores."""
    if not (0.0 <= pis <= 100.0 and 0.0 <= mas <= 100.0):
        raise OutOfRange(f"PIS/MAS must be within 0..100, got {pis!r}, {mas!r}")
    return (pis + mas) / 2.0


def maturity_level(score: float) -> MaturityLevel:
    """Map a 0-100 score to its maturity level.

    The comparison happens on the unrounded value; 33 and 66 belong to the
    lower level (inclusive upper bounds).
    """
    if not 0.0 <= score <= 100.0:
        raise OutOfRange(f"score must be within 0..100, got {score!r}")
    if score <= LEVEL_INITIAL_MAX:
        return MaturityLevel.INITIAL
    if score <= LEVEL_MANAGED_MAX:
        return MaturityLevel.MANAGED
    return MaturityLevel.OPTIMIZED


def normalise_totals(totals: Mapping[str, float]) -> dict[str, float]:
    """Divide each total by the grand total; invariant under uniform scaling."""
    grand_total = sum(totals.values())
    if grand_total <= 0:
        raise WeightSumInvalid(f"factor totals must be positive, got sum {grand_total!r}")
    return {domain_id: total / grand_total for domain_id, total in totals.items()}


def derive_weights(
    profile: WeightProfile, selected_domain_ids: Sequence[str]
) -> dict[str, float]:
    """Normalise per-domain factor totals into weights that sum to 1.

    The profile must cover exactly the selected domains; each factor total
    is the sum of the four 1-3 scores (range 4..12), divided by the grand
    total across domains.
    """
    missing = [d for d in selected_domain_ids if d not in profile.factors]
    if missing:
        raise MissingDomain(
            f"weight profile missing factors for: {', '.join(missing)}", details=missing
        )
    extra = [d for d in profile.factors if d not in set(selected_domain_ids)]
    if extra:
        raise ExtraDomain(
            f"weight profile names unselected domains: {', '.join(extra)}", details=extra
        )
    totals: dict[str, int] = {}
    for domain_id in selected_domain_ids:
        scores = profile.factors[domain_id]
        scores.check(domain_id)
        totals[domain_id] = scores.total()
    return normalise_totals(totals)


def overall_maturity_score(
    ds_by_domain: Mapping[str, float], weight_by_domain: Mapping[str, float]
) -> tuple[float, MaturityLevel]:
    """Weighted sum of domain scores and its maturity level."""
    if set(ds_by_domain) != set(weight_by_domain):
        missing = sorted(set(ds_by_domain) - set(weight_by_domain))
        if missing:
            raise MissingDomain(f"weights missing for: {', '.join(missing)}", details=missing)
        extra = sorted(set(weight_by_domain) - set(ds_by_domain))
        raise ExtraDomain(f"weights given for unscored domains: {', '.join(extra)}", details=extra)
    weight_sum = sum(weight_by_domain.values())
    if abs(weight_sum - 1.0) > 1e-9:
        raise WeightSumInvalid(f"weights sum to {weight_sum!r}, expected 1 within 1e-9")
    for domain_id, ds in ds_by_domain.items():
        if not 0.0 <= ds <= 100.0:
            raise OutOfRange(f"domain score for {domain_id!r} out of 0..100: {ds!r}")
    oms = 0.0
    for domain_id, ds in ds_by_domain.items():
        oms += weight_by_domain[domain_id] * ds
    # the accumulated sum can drift a few ulps past the [0, 100] bounds even
    # though the exact convex combination cannot; clamp before the level lookup
    oms = min(100.0, max(0.0, oms))
    return oms, maturity_level(oms)


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

def score_assessment(
    assessment: Assessment, catalog: Catalog, missing_as_zero: bool = False
) -> ScoreReport:
    """Run the whole pipeline and return a report with a replayable trace.

    Strict by default: an incomplete assessment raises ``Incomplete`` whose
    details list every missing rating and evaluation. ``missing_as_zero``
    scores missing items as 0 points and flags them in the trace.

    Deterministic: identical inputs yield an identical report apart from
    ``generated_at``.
    """
    if (assessment.catalog_id, assessment.catalog_version) != (
        catalog.catalog_id,
        catalog.version,
    ):
        raise CatalogMismatch(
            f"assessment pins catalog {assessment.catalog_id}@{assessment.catalog_version}, "
            f"got {catalog.ref}"
        )
    if not missing_as_zero:
        missing = missing_items(assessment, catalog)
        if missing:
            raise Incomplete(
                f"assessment has {len(missing)} missing ratings/evaluations; "
                "rate everything in scope or score with missing_as_zero",
                details=missing,
            )

    trace: list[TraceStep] = []
    per_domain: list[dict[str, Any]] = []
    for selection in assessment.selections:
        domain = catalog.find_domain(selection.domain_id)
        if domain is None:
            raise UnknownDomain(
                f"selected domain {selection.domain_id!r} missing from catalog {catalog.ref}"
            )
        pis, pis_step = practice_implementation_score(selection, domain, missing_as_zero)
        mas, mas_step = metric_achievement_score(selection, domain, missing_as_zero)
        ds = domain_score(pis, mas)
        ds_step = TraceStep(
            name=f"ds[{domain.domain_id}]",
            operation="domain_score",
            inputs={"domain_id": domain.domain_id, "pis": pis, "mas": mas},
            result=ds,
        )
        level = maturity_level(ds)
        level_step = TraceStep(
            name=f"level[{domain.domain_id}]",
            operation="maturity_level",
            inputs={"domain_id": domain.domain_id, "score": ds},
            result=level.label,
        )
        trace.extend((pis_step, mas_step, ds_step, level_step))
        per_domain.append(
            {
                "selection": selection,
                "domain": domain,
                "pis": pis,
                "mas": mas,
                "ds": ds,
                "level": level,
                "pis_step": pis_step,
                "mas_step": mas_step,
            }
        )

    selected_ids = assessment.selected_ids()
    weights: dict[str, float] = {}
    if assessment.weight_profile is not None:
        profile = assessment.weight_profile
        weights = derive_weights(profile, selected_ids)
        totals = {d: profile.factors[d].total() for d in selected_ids}
        grand_total = sum(totals.values())
        for domain_id in selected_ids:
            scores = profile.factors[domain_id]
            trace.append(
                TraceStep(
                    name=f"weight_total[{domain_id}]",
                    operation="weight_factor_total",
                    inputs={"domain_id": domain_id, **scores.to_dict()},
                    result=totals[domain_id],
                )
            )
        for domain_id in selected_ids:
            trace.append(
                TraceStep(
                    name=f"weight[{domain_id}]",
                    operation="weight_normalise",
                    inputs={
                        "domain_id": domain_id,
                        "factor_total": totals[domain_id],
                        "grand_total": grand_total,
                    },
                    result=weights[domain_id],
                )
            )
    else:
        count = len(selected_ids)
        for domain_id in selected_ids:
            weight = 1.0 / count
            weights[domain_id] = weight
            trace.append(
                TraceStep(
                    name=f"weight[{domain_id}]",
                    operation="equal_weight",
                    inputs={"domain_id": domain_id, "domain_count": count},
                    result=weight,
                    note="default equal weights",
                )
            )

    ds_by_domain = {row["domain"].domain_id: row["ds"] for row in per_domain}
    oms, overall_level = overall_maturity_score(ds_by_domain, weights)
    trace.append(
        TraceStep(
            name="oms",
            operation="overall_maturity_score",
            inputs={"ds_by_domain": ds_by_domain, "weight_by_domain": weights},
            result=oms,
        )
    )
    trace.append(
        TraceStep(
            name="overall_level",
            operation="maturity_level",
            inputs={"score": oms},
            result=overall_level.label,
        )
    )

    breakdowns = tuple(
        DomainScoreBreakdown(
            domain_id=row["domain"].domain_id,
            domain_name=row["domain"].name,
            target_tier=row["selection"].target_tier,
            pis=row["pis"],
            mas=row["mas"],
            ds=row["ds"],
            level=row["level"],
            weight=weights[row["domain"].domain_id],
            pis_numerator=row["pis_step"].inputs["numerator"],
            pis_denominator=row["pis_step"].inputs["denominator"],
            mas_numerator=row["mas_step"].inputs["numerator"],
            mas_denominator=row["mas_step"].inputs["denominator"],
        )
        for row in per_domain
    )
    return ScoreReport(
        assessment_id=assessment.assessment_id,
        catalog_id=assessment.catalog_id,
        catalog_version=assessment.catalog_version,
        generated_at=utc_now_rfc3339(),
        breakdowns=breakdowns,
        oms=oms,
        overall_level=overall_level,
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Trace replay
# ---------------------------------------------------------------------------

def replay_step(step: TraceStep) -> Any:
    """Redo one trace step's arithmetic from its recorded inputs.

    Uses the same operations in the same order as the engine, so results
    reproduce the report's numbers bit for bit.
    """
    op = step.operation
    i = step.inputs
    if op == "practice_implementation_score":
        numerator = sum(i["points_by_practice"].values())
        return 100.0 * numerator / (MAX_RATING * i["practice_count"])
    if op == "metric_achievement_score":
        numerator = sum(i["points_by_metric"].values())
        return 100.0 * numerator / (MAX_POINTS * i["metric_count"])
    if op == "domain_score":
        return (i["pis"] + i["mas"]) / 2.0
    if op == "maturity_level":
        return maturity_level(i["score"]).label
    if op == "weight_factor_total":
        return (
            i["risk_impact"]
            + i["compliance_requirement"]
            + i["business_impact"]
            + i["interdependency"]
        )
    if op == "weight_normalise":
        return i["factor_total"] / i["grand_total"]
    if op == "equal_weight":
        return 1.0 / i["domain_count"]
    if op == "overall_maturity_score":
        total = 0.0
        for domain_id, ds in i["ds_by_domain"].items():
            total += i["weight_by_domain"][domain_id] * ds
        return min(100.0, max(0.0, total))
    raise ValueError(f"unknown trace operation {op!r}")


def replay_trace(trace: Sequence[TraceStep]) -> dict[str, Any]:
    """Replay every step; returns step name -> recomputed result."""
    return {step.name: replay_step(step) for step in trace}


# ---------------------------------------------------------------------------
# Report serialisation
# ---------------------------------------------------------------------------

def report_to_dict(report: ScoreReport) -> dict[str, Any]:
    return {
        "format_version": REPORT_FORMAT_VERSION,
        "assessment_id": report.assessment_id,
        "catalog_id": report.catalog_id,
        "catalog_version": report.catalog_version,
        "generated_at": report.generated_at,
        "oms": number_field(report.oms),
        "overall_level": report.overall_level.label,
        "domains": [b.to_dict() for b in report.breakdowns],
        "trace": [step.to_dict() for step in report.trace],
    }


def report_to_json(report: ScoreReport) -> bytes:
    """Canonical JSON bytes for a report; identical across CLI and service."""
    payload = json.dumps(
        report_to_dict(report), indent=2, ensure_ascii=False, allow_nan=False
    )
    return (payload + "\n").encode("utf-8")

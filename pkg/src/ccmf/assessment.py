"""Assessment sessions: domain selection, target tiers, ratings, evaluations.

An assessment pins one catalog version and tracks, per selected domain,
the target tier plus the practice ratings and metric evaluations entered
so far. Scope is cumulative: a domain targeting Intermediate requires
everything in Basic and Intermediate. Entries above a lowered target tier
are kept in storage but drop out of scoring scope and completeness.
"""

from __future__ import annotations

import enum
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Optional

from .catalog import Catalog, Domain, DomainKind, Metric, MetricKind, TierLevel
from .errors import (
    CatalogMismatch,
    CorruptDocument,
    DomainNotSelected,
    DuplicateElective,
    ExtraDomain,
    FactorOutOfRange,
    FormatVersionUnsupported,
    InvalidPoints,
    NotElective,
    OutOfScope,
    UnknownDomain,
    UnknownMetric,
    UnknownPractice,
    WrongKind,
)

ASSESSMENT_FORMAT_VERSION = "1"


def utc_now_rfc3339() -> str:
    """Current UTC time as an RFC 3339 string with Z suffix."""
    return datetime.now(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")


class RatingValue(enum.IntEnum):
    """Implementation level of a practice on the 0-2 scale."""

    NOT_IMPLEMENTED = 0
    PARTIALLY_IMPLEMENTED = 1
    FULLY_IMPLEMENTED = 2

    @property
    def label(self) -> str:
        return {
            RatingValue.NOT_IMPLEMENTED: "Not Implemented",
            RatingValue.PARTIALLY_IMPLEMENTED: "Partially Implemented",
            RatingValue.FULLY_IMPLEMENTED: "Fully Implemented",
        }[self]


@dataclass
class Rating:
    value: RatingValue
    note: Optional[str] = None


@dataclass
class Evaluation:
    """A metric result: 0-3 points, plus the raw measurement when quantitative."""

    points: int
    measured_value: Optional[float] = None
    note: Optional[str] = None


@dataclass(frozen=True)
class FactorScores:
    """Per-domain importance factors, each scored 1-3 by the practitioner."""

    risk_impact: int
    compliance_requirement: int
    business_impact: int
    interdependency: int

    FACTORS = ("risk_impact", "compliance_requirement", "business_impact", "interdependency")

    def total(self) -> int:
        return (
            self.risk_impact
            + self.compliance_requirement
            + self.business_impact
            + self.interdependency
        )

    def check(self, domain_id: str) -> None:
        for name in self.FACTORS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 3:
                raise FactorOutOfRange(
                    f"factor {name} for domain {domain_id!r} must be an integer in 1..3, "
                    f"got {value!r}"
                )

    def to_dict(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in self.FACTORS}


@dataclass
class WeightProfile:
    """Factor scores per selected domain; normalised into weights at scoring time."""

    factors: dict[str, FactorScores] = field(default_factory=dict)

    def to_dict(self) -> dict[str, dict[str, int]]:
        return {domain_id: fs.to_dict() for domain_id, fs in self.factors.items()}


@dataclass
class DomainSelection:
    domain_id: str
    target_tier: TierLevel = TierLevel.BASIC
    ratings: dict[str, Rating] = field(default_factory=dict)
    evaluations: dict[str, Evaluation] = field(default_factory=dict)


@dataclass
class Assessment:
    assessment_id: str
    organisation: str
    catalog_id: str
    catalog_version: str
    created: str
    updated: str
    selections: list[DomainSelection] = field(default_factory=list)
    weight_profile: Optional[WeightProfile] = None
    entity_version: int = 0

    def selection(self, domain_id: str) -> DomainSelection:
        for sel in self.selections:
            if sel.domain_id == domain_id:
                return sel
        raise DomainNotSelected(f"domain {domain_id!r} is not part of this assessment")

    def selected_ids(self) -> list[str]:
        return [sel.domain_id for sel in self.selections]


@dataclass(frozen=True)
class DomainCompleteness:
    domain_id: str
    required_practices: int
    rated_practices: int
    required_metrics: int
    evaluated_metrics: int

    @property
    def complete(self) -> bool:
        return (
            self.rated_practices == self.required_practices
            and self.evaluated_metrics == self.required_metrics
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "domain_id": self.domain_id,
            "required_practices": self.required_practices,
            "rated_practices": self.rated_practices,
            "required_metrics": self.required_metrics,
            "evaluated_metrics": self.evaluated_metrics,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class CompletenessSummary:
    domains: tuple[DomainCompleteness, ...]

    @property
    def overall_complete(self) -> bool:
        return all(d.complete for d in self.domains)

    def to_dict(self) -> dict[str, Any]:
        return {
            "overall_complete": self.overall_complete,
            "domains": [d.to_dict() for d in self.domains],
        }


# ---------------------------------------------------------------------------
# Scope helpers
# ---------------------------------------------------------------------------

def scoped_practice_ids(domain: Domain, target: TierLevel) -> list[str]:
    """Practice ids in cumulative scope for a target tier, in catalog order."""
    return [
        p.practice_id for tier in domain.tiers_up_to(target) for p in tier.practices
    ]


def scoped_metric_ids(domain: Domain, target: TierLevel) -> list[str]:
    return [m.metric_id for tier in domain.tiers_up_to(target) for m in tier.metrics]


def scoped_ratings(selection: DomainSelection, domain: Domain) -> dict[str, Rating]:
    """Stored ratings restricted to the current cumulative scope."""
    in_scope = set(scoped_practice_ids(domain, selection.target_tier))
    return {pid: r for pid, r in selection.ratings.items() if pid in in_scope}


def scoped_evaluations(selection: DomainSelection, domain: Domain) -> dict[str, Evaluation]:
    in_scope = set(scoped_metric_ids(domain, selection.target_tier))
    return {mid: e for mid, e in selection.evaluations.items() if mid in in_scope}


def _resolve_domain(assessment: Assessment, catalog: Catalog, domain_id: str) -> Domain:
    _check_catalog_pin(assessment, catalog)
    domain = catalog.find_domain(domain_id)
    if domain is None:
        raise UnknownDomain(f"domain {domain_id!r} does not exist in catalog {catalog.ref}")
    assessment.selection(domain_id)  # raises DomainNotSelected
    return domain


def _check_catalog_pin(assessment: Assessment, catalog: Catalog) -> None:
    if (assessment.catalog_id, assessment.catalog_version) != (
        catalog.catalog_id,
        catalog.version,
    ):
        raise CatalogMismatch(
            f"assessment pins catalog {assessment.catalog_id}@{assessment.catalog_version}, "
            f"got {catalog.ref}"
        )


def _touch(assessment: Assessment) -> None:
    assessment.updated = utc_now_rfc3339()


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def create_assessment(
    organisation: str, catalog: Catalog, elective_ids: list[str] | tuple[str, ...] = ()
) -> Assessment:
    """Start an assessment: every core domain plus the named electives.

    Selections follow catalog document order and all start at target tier
    Basic with no ratings or evaluations.
    """
    chosen: set[str] = set()
    for elective_id in elective_ids:
        domain = catalog.find_domain(elective_id)
        if domain is None:
            raise UnknownDomain(f"domain {elective_id!r} does not exist in catalog {catalog.ref}")
        if domain.kind is not DomainKind.ELECTIVE:
            raise NotElective(
                f"domain {elective_id!r} is a core domain; core domains are always included"
            )
        if elective_id in chosen:
            raise DuplicateElective(f"elective {elective_id!r} named more than once")
        chosen.add(elective_id)

    now = utc_now_rfc3339()
    selections = [
        DomainSelection(domain_id=d.domain_id)
        for d in catalog.domains
        if d.kind is DomainKind.CORE or d.domain_id in chosen
    ]
    return Assessment(
        assessment_id=str(uuid.uuid4()),
        organisation=organisation,
        catalog_id=catalog.catalog_id,
        catalog_version=catalog.version,
        created=now,
        updated=now,
        selections=selections,
    )


def set_target_tier(
    assessment: Assessment, catalog: Catalog, domain_id: str, tier: TierLevel
) -> Assessment:
    """Change a domain's target tier.

    Setting the current tier again is a no-op. Lowering the tier keeps any
    ratings/evaluations above it in storage; they simply leave scope.
    """
    domain = _resolve_domain(assessment, catalog, domain_id)
    selection = assessment.selection(domain.domain_id)
    if selection.target_tier is tier:
        return assessment
    selection.target_tier = tier
    _touch(assessment)
    return assessment


def rate_practice(
    assessment: Assessment,
    catalog: Catalog,
    domain_id: str,
    practice_id: str,
    value: RatingValue,
    note: Optional[str] = None,
) -> Assessment:
    """Record the implementation rating for one in-scope practice.

    Re-rating overwrites the previous entry.
    """
    domain = _resolve_domain(assessment, catalog, domain_id)
    found = domain.find_practice(practice_id)
    if found is None:
        raise UnknownPractice(f"practice {practice_id!r} does not exist in domain {domain_id!r}")
    _, tier_level = found
    selection = assessment.selection(domain_id)
    if tier_level > selection.target_tier:
        raise OutOfScope(
            f"practice {practice_id!r} belongs to tier {tier_level.label}, above the "
            f"target tier {selection.target_tier.label}"
        )
    selection.ratings[practice_id] = Rating(value=RatingValue(value), note=note)
    _touch(assessment)
    return assessment


def _resolve_metric(
    assessment: Assessment, catalog: Catalog, domain_id: str, metric_id: str
) -> tuple[Metric, TierLevel, DomainSelection]:
    domain = _resolve_domain(assessment, catalog, domain_id)
    found = domain.find_metric(metric_id)
    if found is None:
        raise UnknownMetric(f"metric {metric_id!r} does not exist in domain {domain_id!r}")
    metric, tier_level = found
    selection = assessment.selection(domain_id)
    if tier_level > selection.target_tier:
        raise OutOfScope(
            f"metric {metric_id!r} belongs to tier {tier_level.label}, above the "
            f"target tier {selection.target_tier.label}"
        )
    return metric, tier_level, selection


def evaluate_metric_quantitative(
    assessment: Assessment,
    catalog: Catalog,
    domain_id: str,
    metric_id: str,
    measured_value: float,
    note: Optional[str] = None,
) -> tuple[int, Assessment]:
    """Record a quantitative measurement; points come from the band lookup."""
    metric, _, selection = _resolve_metric(assessment, catalog, domain_id, metric_id)
    if metric.kind is not MetricKind.QUANTITATIVE:
        raise WrongKind(f"metric {metric_id!r} is qualitative; supply rubric points instead")
    points = metric.band_for(float(measured_value)).points
    selection.evaluations[metric_id] = Evaluation(
        points=points, measured_value=float(measured_value), note=note
    )
    _touch(assessment)
    return points, assessment


def evaluate_metric_qualitative(
    assessment: Assessment,
    catalog: Catalog,
    domain_id: str,
    metric_id: str,
    points: int,
    note: Optional[str] = None,
) -> Assessment:
    """Record the chosen rubric level (0-3) for a qualitative metric."""
    metric, _, selection = _resolve_metric(assessment, catalog, domain_id, metric_id)
    if metric.kind is not MetricKind.QUALITATIVE:
        raise WrongKind(f"metric {metric_id!r} is quantitative; supply a measured value instead")
    if not isinstance(points, int) or isinstance(points, bool) or not 0 <= points <= 3:
        raise InvalidPoints(f"rubric points must be an integer in 0..3, got {points!r}")
    selection.evaluations[metric_id] = Evaluation(points=points, note=note)
    _touch(assessment)
    return assessment


def set_weight_profile(
    assessment: Assessment,
    catalog: Catalog,
    factors: Optional[dict[str, FactorScores]],
    require_complete: bool = False,
) -> Assessment:
    """Replace the weight profile (``None`` clears it, reverting to equal weights).

    Factor values must be 1-3 and every named domain must be selected. With
    ``require_complete`` the profile must cover every selected domain, which
    is what scoring will eventually demand.
    """
    _check_catalog_pin(assessment, catalog)
    if factors is None:
        assessment.weight_profile = None
        _touch(assessment)
        return assessment

    selected = set(assessment.selected_ids())
    for domain_id, scores in factors.items():
        if domain_id not in selected:
            raise ExtraDomain(f"domain {domain_id!r} is not part of this assessment")
        scores.check(domain_id)
    if require_complete:
        missing = [d for d in assessment.selected_ids() if d not in factors]
        if missing:
            from .errors import MissingDomain

            raise MissingDomain(
                f"weight profile missing factors for: {', '.join(missing)}", details=missing
            )
    ordered = {
        domain_id: factors[domain_id]
        for domain_id in assessment.selected_ids()
        if domain_id in factors
    }
    assessment.weight_profile = WeightProfile(factors=ordered)
    _touch(assessment)
    return assessment


def completeness(assessment: Assessment, catalog: Catalog) -> CompletenessSummary:
    """Progress per domain over the current cumulative scope."""
    _check_catalog_pin(assessment, catalog)
    rows = []
    for selection in assessment.selections:
        domain = catalog.find_domain(selection.domain_id)
        if domain is None:
            raise UnknownDomain(
                f"selected domain {selection.domain_id!r} missing from catalog {catalog.ref}"
            )
        required_p = scoped_practice_ids(domain, selection.target_tier)
        required_m = scoped_metric_ids(domain, selection.target_tier)
        rows.append(
            DomainCompleteness(
                domain_id=selection.domain_id,
                required_practices=len(required_p),
                rated_practices=sum(1 for pid in required_p if pid in selection.ratings),
                required_metrics=len(required_m),
                evaluated_metrics=sum(1 for mid in required_m if mid in selection.evaluations),
            )
        )
    return CompletenessSummary(tuple(rows))


def missing_items(assessment: Assessment, catalog: Catalog) -> list[dict[str, str]]:
    """Every unrated practice and unevaluated metric in cumulative scope."""
    _check_catalog_pin(assessment, catalog)
    missing: list[dict[str, str]] = []
    for selection in assessment.selections:
        domain = catalog.find_domain(selection.domain_id)
        if domain is None:
            raise UnknownDomain(
                f"selected domain {selection.domain_id!r} missing from catalog {catalog.ref}"
            )
        for pid in scoped_practice_ids(domain, selection.target_tier):
            if pid not in selection.ratings:
                missing.append(
                    {"domain_id": selection.domain_id, "kind": "practice", "id": pid}
                )
        for mid in scoped_metric_ids(domain, selection.target_tier):
            if mid not in selection.evaluations:
                missing.append({"domain_id": selection.domain_id, "kind": "metric", "id": mid})
    return missing


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def assessment_to_dict(assessment: Assessment) -> dict[str, Any]:
    def rating_dict(r: Rating) -> dict[str, Any]:
        out: dict[str, Any] = {"value": int(r.value)}
        if r.note is not None:
            out["note"] = r.note
        return out

    def evaluation_dict(e: Evaluation) -> dict[str, Any]:
        out: dict[str, Any] = {"points": e.points}
        if e.measured_value is not None:
            out["measured_value"] = e.measured_value
        if e.note is not None:
            out["note"] = e.note
        return out

    return {
        "format_version": ASSESSMENT_FORMAT_VERSION,
        "assessment_id": assessment.assessment_id,
        "organisation": assessment.organisation,
        "catalog_id": assessment.catalog_id,
        "catalog_version": assessment.catalog_version,
        "created": assessment.created,
        "updated": assessment.updated,
        "entity_version": assessment.entity_version,
        "selections": [
            {
                "domain_id": sel.domain_id,
                "target_tier": sel.target_tier.token,
                "ratings": {pid: rating_dict(r) for pid, r in sel.ratings.items()},
                "evaluations": {
                    mid: evaluation_dict(e) for mid, e in sel.evaluations.items()
                },
            }
            for sel in assessment.selections
        ],
        "weight_profile": (
            assessment.weight_profile.to_dict() if assessment.weight_profile else None
        ),
    }


def assessment_from_dict(raw: dict[str, Any]) -> Assessment:
    """Rebuild an assessment from its document form.

    Raises FormatVersionUnsupported for unknown format versions and
    CorruptDocument for structural damage.
    """

    def fail(message: str) -> CorruptDocument:
        return CorruptDocument(f"assessment document invalid: {message}")

    if not isinstance(raw, dict):
        raise fail("top level must be an object")
    version = raw.get("format_version")
    if version != ASSESSMENT_FORMAT_VERSION:
        raise FormatVersionUnsupported(
            f"assessment format_version {version!r} is not supported "
            f"(expected {ASSESSMENT_FORMAT_VERSION!r})"
        )
    try:
        selections = []
        for sel in raw["selections"]:
            ratings = {}
            for pid, r in sel.get("ratings", {}).items():
                ratings[pid] = Rating(value=RatingValue(r["value"]), note=r.get("note"))
            evaluations = {}
            for mid, e in sel.get("evaluations", {}).items():
                points = e["points"]
                if not isinstance(points, int) or not 0 <= points <= 3:
                    raise fail(f"points for metric {mid!r} out of range: {points!r}")
                evaluations[mid] = Evaluation(
                    points=points,
                    measured_value=e.get("measured_value"),
                    note=e.get("note"),
                )
            selections.append(
                DomainSelection(
                    domain_id=sel["domain_id"],
                    target_tier=TierLevel.from_token(sel["target_tier"]),
                    ratings=ratings,
                    evaluations=evaluations,
                )
            )
        profile_raw = raw.get("weight_profile")
        profile = None
        if profile_raw is not None:
            profile = WeightProfile(
                factors={
                    domain_id: FactorScores(**scores)
                    for domain_id, scores in profile_raw.items()
                }
            )
        return Assessment(
            assessment_id=raw["assessment_id"],
            organisation=raw["organisation"],
            catalog_id=raw["catalog_id"],
            catalog_version=raw["catalog_version"],
            created=raw["created"],
            updated=raw["updated"],
            selections=selections,
            weight_profile=profile,
            entity_version=int(raw.get("entity_version", 0)),
        )
    except CorruptDocument:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise fail(str(exc)) from exc


def validate_assessment(assessment: Assessment, catalog: Catalog) -> list[str]:
    """Cross-check an assessment against its catalog; returns problem strings."""
    problems: list[str] = []
    if (assessment.catalog_id, assessment.catalog_version) != (
        catalog.catalog_id,
        catalog.version,
    ):
        problems.append(
            f"assessment pins {assessment.catalog_id}@{assessment.catalog_version}, "
            f"catalog is {catalog.ref}"
        )
        return problems

    seen: set[str] = set()
    core_ids = {d.domain_id for d in catalog.core_domains()}
    for selection in assessment.selections:
        if selection.domain_id in seen:
            problems.append(f"duplicate selection {selection.domain_id!r}")
        seen.add(selection.domain_id)
        domain = catalog.find_domain(selection.domain_id)
        if domain is None:
            problems.append(f"selected domain {selection.domain_id!r} not in catalog")
            continue
        for pid, rating in selection.ratings.items():
            if domain.find_practice(pid) is None:
                problems.append(f"rating references unknown practice {pid!r} in {domain.domain_id}")
        for mid, evaluation in selection.evaluations.items():
            found = domain.find_metric(mid)
            if found is None:
                problems.append(f"evaluation references unknown metric {mid!r} in {domain.domain_id}")
                continue
            metric, _ = found
            if (
                metric.kind is MetricKind.QUANTITATIVE
                and evaluation.measured_value is not None
                and metric.band_for(evaluation.measured_value).points != evaluation.points
            ):
                problems.append(
                    f"evaluation of {mid!r} stores {evaluation.points} points but the band "
                    f"for {evaluation.measured_value!r} gives "
                    f"{metric.band_for(evaluation.measured_value).points}"
                )
    missing_core = core_ids - seen
    if missing_core:
        problems.append(f"core domains missing from selections: {sorted(missing_core)}")
    return problems

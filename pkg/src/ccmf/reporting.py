"""Turn score reports into gap analyses, chart datasets, and exports.

All transformations here are pure projections of the score report and the
assessment; no score arithmetic happens in this module beyond display
rounding for CSV cells.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

from .assessment import Assessment, scoped_metric_ids, scoped_practice_ids
from .catalog import Catalog, TierLevel
from .errors import ReportMismatch, UnknownDomain, UnsupportedFormat
from .scoring import (
    MAX_POINTS,
    MAX_RATING,
    ScoreReport,
    display_number,
    report_to_dict,
)

CSV_COLUMNS = ("domain_id", "name", "target_tier", "pis", "mas", "ds", "level", "weight")


@dataclass(frozen=True)
class GapItem:
    """One practice below Fully Implemented or metric below 3 points."""

    kind: str  # "practice" | "metric"
    item_id: str
    tier: TierLevel
    current: int
    maximum: int

    @property
    def shortfall(self) -> int:
        return self.maximum - self.current

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "id": self.item_id,
            "tier": self.tier.token,
            "current": self.current,
            "maximum": self.maximum,
            "shortfall": self.shortfall,
        }


@dataclass(frozen=True)
class DomainGaps:
    domain_id: str
    domain_name: str
    items: tuple[GapItem, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "domain_id": self.domain_id,
            "domain_name": self.domain_name,
            "items": [item.to_dict() for item in self.items],
        }


@dataclass(frozen=True)
class GapReport:
    assessment_id: str
    domains: tuple[DomainGaps, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "assessment_id": self.assessment_id,
            "domains": [d.to_dict() for d in self.domains],
        }


@dataclass(frozen=True)
class ChartDataset:
    """Chart-ready projection: parallel lists in catalog order."""

    labels: tuple[str, ...]
    domain_ids: tuple[str, ...]
    pis: tuple[float, ...]
    mas: tuple[float, ...]
    ds: tuple[float, ...]
    oms: float
    overall_level: str

    def to_dict(self) -> dict[str, Any]:
        return {
            "labels": list(self.labels),
            "domain_ids": list(self.domain_ids),
            "series": {
                "pis": list(self.pis),
                "mas": list(self.mas),
                "ds": list(self.ds),
            },
            "series_display": {
                "pis": [display_number(v) for v in self.pis],
                "mas": [display_number(v) for v in self.mas],
                "ds": [display_number(v) for v in self.ds],
            },
            "overall": {
                "oms": self.oms,
                "oms_display": display_number(self.oms),
                "level": self.overall_level,
            },
        }


def _check_report_matches(assessment: Assessment, catalog: Catalog, report: ScoreReport) -> None:
    if report.assessment_id != assessment.assessment_id:
        raise ReportMismatch(
            f"report belongs to assessment {report.assessment_id!r}, "
            f"not {assessment.assessment_id!r}"
        )
    if (report.catalog_id, report.catalog_version) != (catalog.catalog_id, catalog.version):
        raise ReportMismatch(
            f"report pins catalog {report.catalog_id}@{report.catalog_version}, got {catalog.ref}"
        )
    if [b.domain_id for b in report.breakdowns] != assessment.selected_ids():
        raise ReportMismatch("report domains do not match the assessment's selections")


def gap_analysis(assessment: Assessment, catalog: Catalog, report: ScoreReport) -> GapReport:
    """List every in-scope practice below 2 and metric below 3 points.

    Items are ordered tier first (fix foundations before higher tiers),
    then by shortfall descending, then id. Unrated/unevaluated items count
    as 0, matching how a missing-as-zero report scored them.
    """
    _check_report_matches(assessment, catalog, report)
    domains = []
    for selection in assessment.selections:
        domain = catalog.find_domain(selection.domain_id)
        if domain is None:
            raise UnknownDomain(
                f"selected domain {selection.domain_id!r} missing from catalog {catalog.ref}"
            )
        items: list[GapItem] = []
        for tier in domain.tiers_up_to(selection.target_tier):
            for practice in tier.practices:
                rating = selection.ratings.get(practice.practice_id)
                current = int(rating.value) if rating is not None else 0
                if current < MAX_RATING:
                    items.append(
                        GapItem("practice", practice.practice_id, tier.level, current, MAX_RATING)
                    )
            for metric in tier.metrics:
                evaluation = selection.evaluations.get(metric.metric_id)
                current = evaluation.points if evaluation is not None else 0
                if current < MAX_POINTS:
                    items.append(
                        GapItem("metric", metric.metric_id, tier.level, current, MAX_POINTS)
                    )
        items.sort(key=lambda item: (item.tier, -item.shortfall, item.item_id))
        domains.append(DomainGaps(domain.domain_id, domain.name, tuple(items)))
    return GapReport(assessment.assessment_id, tuple(domains))


def gap_totals(assessment: Assessment, catalog: Catalog) -> dict[str, int]:
    """Expected gap-item counts per domain, independent of the gap builder."""
    totals: dict[str, int] = {}
    for selection in assessment.selections:
        domain = catalog.find_domain(selection.domain_id)
        below_max_practices = sum(
            1
            for pid in scoped_practice_ids(domain, selection.target_tier)
            if (int(selection.ratings[pid].value) if pid in selection.ratings else 0) < MAX_RATING
        )
        below_max_metrics = sum(
            1
            for mid in scoped_metric_ids(domain, selection.target_tier)
            if (selection.evaluations[mid].points if mid in selection.evaluations else 0)
            < MAX_POINTS
        )
        totals[selection.domain_id] = below_max_practices + below_max_metrics
    return totals


def chart_data(report: ScoreReport) -> ChartDataset:
    """Lossless projection of a report into parallel chart series."""
    return ChartDataset(
        labels=tuple(b.domain_name for b in report.breakdowns),
        domain_ids=tuple(b.domain_id for b in report.breakdowns),
        pis=tuple(b.pis for b in report.breakdowns),
        mas=tuple(b.mas for b in report.breakdowns),
        ds=tuple(b.ds for b in report.breakdowns),
        oms=report.oms,
        overall_level=report.overall_level.label,
    )


def export(report: ScoreReport, gaps: GapReport, format: str) -> bytes:
    """Serialise a report (with its gap section) to ``json`` or ``csv``.

    CSV: one row per domain plus a final OVERALL row, RFC 4180 quoting,
    numbers rounded half-up to 2 decimals. JSON keeps full precision.
    """
    if gaps.assessment_id != report.assessment_id:
        raise ReportMismatch(
            f"gap report belongs to assessment {gaps.assessment_id!r}, "
            f"not {report.assessment_id!r}"
        )
    if format == "json":
        payload = report_to_dict(report)
        payload["gaps"] = gaps.to_dict()["domains"]
        return (json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n").encode(
            "utf-8"
        )
    if format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer)  # default lineterminator is CRLF per RFC 4180
        writer.writerow(CSV_COLUMNS)
        for b in report.breakdowns:
            writer.writerow(
                [
                    b.domain_id,
                    b.domain_name,
                    b.target_tier.token,
                    display_number(b.pis),
                    display_number(b.mas),
                    display_number(b.ds),
                    b.level.label,
                    display_number(b.weight),
                ]
            )
        writer.writerow(
            ["OVERALL", "", "", "", "", display_number(report.oms), report.overall_level.label, ""]
        )
        return buffer.getvalue().encode("utf-8")
    raise UnsupportedFormat(f"unsupported export format {format!r} (expected json or csv)")

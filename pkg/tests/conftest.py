"""Shared fixtures: catalog document builders and worked assessments.

The worked three-domain catalog is sized so every score is hand-derivable:

* security-governance targeting Intermediate with ratings [2,1,0]+[2,2]
  gives PIS = 100*7/(2*5) = 70.0, metric points [3,2,1] give
  MAS = 100*6/(3*3) = 66.666..., so DS = 68.333... (Optimized).
* asset-stewardship at Basic: ratings [1,1,1,1,0] -> PIS 40, points
  [2,2,1,1,0] -> MAS 40, DS 40 (Managed).
* incident-readiness at Basic: rating [1] -> PIS 50, points [3,0] ->
  MAS 50, DS 50 (Managed).
* factor totals 10/4/6 -> weights 0.5/0.2/0.3, so
  OMS = 0.5*68.333... + 0.2*40 + 0.3*50 = 57.1666... (Managed).
"""

from __future__ import annotations

import json

import pytest

from ccmf.assessment import (
    FactorScores,
    RatingValue,
    create_assessment,
    evaluate_metric_qualitative,
    rate_practice,
    set_target_tier,
    set_weight_profile,
)
from ccmf.catalog import Catalog, TierLevel, parse_catalog, validate_catalog


def qualitative_metric(metric_id: str) -> dict:
    return {
        "metric_id": metric_id,
        "description": f"how well {metric_id} is achieved",
        "kind": "qualitative",
        "rubric": {
            "3": f"{metric_id}: fully achieved",
            "2": f"{metric_id}: mostly achieved",
            "1": f"{metric_id}: partially achieved",
            "0": f"{metric_id}: not achieved",
        },
    }


def quantitative_metric(
    metric_id: str,
    thresholds: tuple[float, float, float] = (90, 70, 50),
    direction: str = "higher_is_better",
    unit: str = "percent",
) -> dict:
    hi, mid, lo = thresholds
    if direction == "higher_is_better":
        bands = [
            {"points": 3, "lower": hi},
            {"points": 2, "lower": mid, "upper": hi},
            {"points": 1, "lower": lo, "upper": mid},
            {"points": 0, "upper": lo},
        ]
    else:
        lo, mid, hi = thresholds
        bands = [
            {"points": 3, "upper": lo},
            {"points": 2, "lower": lo, "upper": mid},
            {"points": 1, "lower": mid, "upper": hi},
            {"points": 0, "lower": hi},
        ]
    return {
        "metric_id": metric_id,
        "description": f"measured {metric_id}",
        "kind": "quantitative",
        "unit": unit,
        "direction": direction,
        "bands": bands,
    }


def tier_doc(level: str, practice_ids: list[str], metrics: list[dict]) -> dict:
    return {
        "level": level,
        "practices": [
            {"practice_id": pid, "statement": f"do {pid} properly"} for pid in practice_ids
        ],
        "metrics": metrics,
    }


def domain_doc(domain_id: str, kind: str, tiers: list[dict], name: str | None = None) -> dict:
    return {
        "domain_id": domain_id,
        "name": name or domain_id.replace("-", " ").title(),
        "kind": kind,
        "description": f"covers {domain_id}",
        "tiers": tiers,
    }


def catalog_doc(domains: list[dict], catalog_id: str = "test-catalog", version: str = "1") -> dict:
    return {
        "catalog_id": catalog_id,
        "version": version,
        "title": "Test catalog",
        "illustrative": True,
        "domains": domains,
    }


def parse_doc(doc: dict) -> Catalog:
    catalog = parse_catalog(json.dumps(doc).encode("utf-8"))
    report = validate_catalog(catalog)
    assert report.valid, [f"{f.path}: {f.message}" for f in report.errors()]
    return catalog


@pytest.fixture
def worked_catalog() -> Catalog:
    doc = catalog_doc(
        [
            domain_doc(
                "security-governance",
                "core",
                [
                    tier_doc(
                        "basic",
                        ["g1", "g2", "g3"],
                        [qualitative_metric("gm1"), qualitative_metric("gm2")],
                    ),
                    tier_doc("intermediate", ["g4", "g5"], [qualitative_metric("gm3")]),
                    tier_doc("advanced", ["g6"], [qualitative_metric("gm4")]),
                ],
            ),
            domain_doc(
                "asset-stewardship",
                "elective",
                [
                    tier_doc(
                        "basic",
                        ["a1", "a2", "a3", "a4", "a5"],
                        [qualitative_metric(f"am{i}") for i in range(1, 6)],
                    ),
                    tier_doc("intermediate", ["a6"], [qualitative_metric("am6")]),
                    tier_doc("advanced", ["a7"], [qualitative_metric("am7")]),
                ],
            ),
            domain_doc(
                "incident-readiness",
                "elective",
                [
                    tier_doc(
                        "basic", ["i1"], [qualitative_metric("im1"), qualitative_metric("im2")]
                    ),
                    tier_doc("intermediate", ["i2"], [qualitative_metric("im3")]),
                    tier_doc("advanced", ["i3"], [qualitative_metric("im4")]),
                ],
            ),
        ],
        catalog_id="worked",
        version="1",
    )
    return parse_doc(doc)


@pytest.fixture
def worked_assessment(worked_catalog):
    assessment = create_assessment(
        "Worked Example Ltd", worked_catalog, ["asset-stewardship", "incident-readiness"]
    )
    set_target_tier(assessment, worked_catalog, "security-governance", TierLevel.INTERMEDIATE)
    for pid, value in zip(["g1", "g2", "g3", "g4", "g5"], [2, 1, 0, 2, 2]):
        rate_practice(assessment, worked_catalog, "security-governance", pid, RatingValue(value))
    for mid, points in zip(["gm1", "gm2", "gm3"], [3, 2, 1]):
        evaluate_metric_qualitative(
            assessment, worked_catalog, "security-governance", mid, points
        )
    for pid, value in zip(["a1", "a2", "a3", "a4", "a5"], [1, 1, 1, 1, 0]):
        rate_practice(assessment, worked_catalog, "asset-stewardship", pid, RatingValue(value))
    for mid, points in zip(["am1", "am2", "am3", "am4", "am5"], [2, 2, 1, 1, 0]):
        evaluate_metric_qualitative(assessment, worked_catalog, "asset-stewardship", mid, points)
    rate_practice(assessment, worked_catalog, "incident-readiness", "i1", RatingValue(1))
    evaluate_metric_qualitative(assessment, worked_catalog, "incident-readiness", "im1", 3)
    evaluate_metric_qualitative(assessment, worked_catalog, "incident-readiness", "im2", 0)
    set_weight_profile(
        assessment,
        worked_catalog,
        {
            "security-governance": FactorScores(3, 3, 2, 2),  # total 10
            "asset-stewardship": FactorScores(1, 1, 1, 1),    # total 4
            "incident-readiness": FactorScores(2, 2, 1, 1),   # total 6
        },
    )
    return assessment


@pytest.fixture
def tiny_catalog() -> Catalog:
    """One core domain, two practices and two metrics at Basic."""
    doc = catalog_doc(
        [
            domain_doc(
                "solo",
                "core",
                [
                    tier_doc(
                        "basic",
                        ["p1", "p2"],
                        [qualitative_metric("m1"), qualitative_metric("m2")],
                    ),
                    tier_doc("intermediate", ["p3"], [qualitative_metric("m3")]),
                    tier_doc("advanced", ["p4"], [qualitative_metric("m4")]),
                ],
            )
        ],
        catalog_id="tiny",
        version="1",
    )
    return parse_doc(doc)

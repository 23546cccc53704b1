"""Tour of the built-in capability catalog.

Shows how the catalog is organised (core vs elective domains, three tiers
per domain, practices and metrics with their scoring bands) and how
validation reports problems without raising.
"""

import json

from ccmf import TierLevel, builtin_catalog, parse_catalog, validate_catalog

catalog = builtin_catalog()
print(f"{catalog.title} ({catalog.ref})")
print(f"{len(catalog.core_domains())} core + {len(catalog.elective_domains())} elective domains\n")

for domain in catalog.domains[:3]:
    practices = sum(len(t.practices) for t in domain.tiers)
    metrics = sum(len(t.metrics) for t in domain.tiers)
    print(f"  {domain.name:<45} {domain.kind.value:<8} {practices} practices, {metrics} metrics")
print("  ...\n")

# A quantitative metric maps raw measurements onto 0-3 points via bands.
data_security = catalog.find_domain("data-security")
metric, tier = data_security.find_metric("encryption-coverage")
print(f"{metric.description} ({tier.label} tier, unit: {metric.unit})")
for band in metric.bands:
    print(f"  {band.describe():>14} -> {band.points} points")
for measured in (92, 90, 75, 40):
    print(f"  measured {measured}% -> {metric.band_for(measured).points} points")

# A qualitative metric offers four rubric levels instead.
culture = catalog.find_domain("cybersecurity-culture-awareness-training")
rubric_metric, _ = culture.find_metric("employee-understanding")
print(f"\n{rubric_metric.description}")
for points in (3, 2, 1, 0):
    print(f"  {points}: {rubric_metric.rubric_text(points)}")

# Validation reports findings rather than raising; the built-in catalog is clean.
report = validate_catalog(catalog)
print(f"\nbuilt-in catalog valid: {report.valid} ({len(report.findings)} findings)")

# A broken document gets error findings with path locators.
broken = {
    "catalog_id": "demo",
    "version": "1",
    "title": "Demo",
    "domains": [
        {
            "domain_id": "lonely",
            "name": "Lonely",
            "kind": "core",
            "description": "a domain with an empty tier",
            "tiers": [
                {"level": "basic", "practices": [], "metrics": []},
                {"level": "intermediate", "practices": [], "metrics": []},
                {"level": "advanced", "practices": [], "metrics": []},
            ],
        }
    ],
}
report = validate_catalog(parse_catalog(json.dumps(broken)))
print(f"broken catalog valid: {report.valid}")
for finding in report.findings[:3]:
    print(f"  {finding.severity}: {finding.path}: {finding.message}")

"""Gap analysis and report export.

Scores an intentionally patchy assessment with missing-as-zero, lists the
gaps in remediation order (lower tiers first, biggest shortfalls first),
and exports the report as CSV and JSON.
"""

from ccmf import (
    RatingValue,
    builtin_catalog,
    chart_data,
    create_assessment,
    evaluate_metric_quantitative,
    export,
    gap_analysis,
    rate_practice,
    score_assessment,
)

catalog = builtin_catalog()
assessment = create_assessment("Gap Demo GmbH", catalog)

# Only partially fill things in; missing items score as zero.
rate_practice(assessment, catalog, "risk-management", "risk-register", RatingValue(2))
rate_practice(assessment, catalog, "risk-management", "annual-risk-assessment", RatingValue(1))
rate_practice(assessment, catalog, "data-security", "data-classification", RatingValue(1))
evaluate_metric_quantitative(assessment, catalog, "data-security", "encryption-coverage", 76)

report = score_assessment(assessment, catalog, missing_as_zero=True)
gaps = gap_analysis(assessment, catalog, report)

print("top gaps per domain (tier, then shortfall):")
for domain in gaps.domains[:3]:
    print(f"  {domain.domain_name}")
    for item in domain.items[:4]:
        print(
            f"    [{item.tier.token}] {item.kind} {item.item_id}: "
            f"{item.current}/{item.maximum} (shortfall {item.shortfall})"
        )

dataset = chart_data(report).to_dict()
print("\nchart series (DS per domain):")
for label, ds in zip(dataset["labels"], dataset["series_display"]["ds"]):
    print(f"  {label}: {ds}")

csv_payload = export(report, gaps, "csv").decode("utf-8")
print("\nCSV export (first lines):")
for line in csv_payload.split("\r\n")[:4]:
    print(f"  {line}")

json_payload = export(report, gaps, "json")
print(f"\nJSON export: {len(json_payload)} bytes, includes trace and gaps sections")

"""Walk through an assessment session against the built-in catalog.

Creates a session (core domains are always in; electives are chosen),
raises a target tier, rates practices, evaluates metrics, and tracks
completeness as the cumulative scope changes.
"""

from ccmf import (
    RatingValue,
    TierLevel,
    builtin_catalog,
    completeness,
    create_assessment,
    evaluate_metric_qualitative,
    evaluate_metric_quantitative,
    rate_practice,
    set_target_tier,
)

catalog = builtin_catalog()
assessment = create_assessment("Demo Manufacturing Ltd", catalog, ["supply-chain-external-dependencies"])
print(f"assessment {assessment.assessment_id}")
print(f"{len(assessment.selections)} domains selected (7 cores + 1 elective)\n")

# Raise the bar for data security: scope becomes Basic + Intermediate.
set_target_tier(assessment, catalog, "data-security", TierLevel.INTERMEDIATE)

# Rate a couple of practices on the 0-2 implementation scale.
rate_practice(assessment, catalog, "data-security", "data-classification",
              RatingValue.FULLY_IMPLEMENTED)
rate_practice(assessment, catalog, "data-security", "encryption-baseline",
              RatingValue.PARTIALLY_IMPLEMENTED,
              note="laptops done, databases in progress")
rate_practice(assessment, catalog, "data-security", "key-management",
              RatingValue.NOT_IMPLEMENTED)

# Quantitative metrics take the raw measurement; banding happens here.
points, _ = evaluate_metric_quantitative(
    assessment, catalog, "data-security", "encryption-coverage", 83.0
)
print(f"encryption coverage measured 83% -> {points} points")

# Qualitative metrics take the chosen rubric level directly.
evaluate_metric_qualitative(
    assessment, catalog, "cybersecurity-culture-awareness-training",
    "employee-understanding", 2,
)

summary = completeness(assessment, catalog)
print(f"\noverall complete: {summary.overall_complete}")
for row in summary.domains:
    if row.rated_practices or row.evaluated_metrics:
        print(
            f"  {row.domain_id}: practices {row.rated_practices}/{row.required_practices}, "
            f"metrics {row.evaluated_metrics}/{row.required_metrics}"
        )

# Lowering a tier keeps out-of-scope entries in storage but out of scope.
set_target_tier(assessment, catalog, "data-security", TierLevel.BASIC)
summary = completeness(assessment, catalog)
row = next(r for r in summary.domains if r.domain_id == "data-security")
print(
    f"\nafter lowering data-security to Basic: practices "
    f"{row.rated_practices}/{row.required_practices} "
    f"(the key-management rating is retained, just out of scope)"
)

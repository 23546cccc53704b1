"""The full scoring pipeline on a hand-checkable three-domain example.

Every number below can be verified with pencil and paper:

  governance: ratings [2,1,0,2,2] -> PIS = 100*7/(2*5) = 70.0
              points  [3,2,1]     -> MAS = 100*6/(3*3) = 66.67
              DS = (70 + 66.67)/2 = 68.33 -> Optimized
  weights:    factor totals 10 : 4 : 6 -> 0.5 / 0.2 / 0.3
  OMS:        0.5*68.33 + 0.2*40 + 0.3*50 = 57.17 -> Managed
"""

import json

from ccmf import (
    FactorScores,
    RatingValue,
    TierLevel,
    create_assessment,
    display_number,
    parse_catalog,
    rate_practice,
    evaluate_metric_qualitative,
    replay_trace,
    score_assessment,
    set_target_tier,
    set_weight_profile,
)


def qual(mid):
    return {
        "metric_id": mid, "description": f"about {mid}", "kind": "qualitative",
        "rubric": {"3": f"{mid} strong", "2": f"{mid} fair", "1": f"{mid} weak", "0": f"{mid} absent"},
    }


def tier(level, pids, mids):
    return {
        "level": level,
        "practices": [{"practice_id": p, "statement": f"do {p}"} for p in pids],
        "metrics": [qual(m) for m in mids],
    }


def dom(did, kind, *tiers):
    return {"domain_id": did, "name": did.replace("-", " ").title(), "kind": kind,
            "description": f"about {did}", "tiers": list(tiers)}


catalog = parse_catalog(json.dumps({
    "catalog_id": "demo-worked", "version": "1", "title": "Worked demo", "domains": [
        dom("governance", "core",
            tier("basic", ["g1", "g2", "g3"], ["gm1", "gm2"]),
            tier("intermediate", ["g4", "g5"], ["gm3"]),
            tier("advanced", ["g6"], ["gm4"])),
        dom("asset-care", "elective",
            tier("basic", ["a1", "a2", "a3", "a4", "a5"], ["am1", "am2", "am3", "am4", "am5"]),
            tier("intermediate", ["a6"], ["am6"]),
            tier("advanced", ["a7"], ["am7"])),
        dom("readiness", "elective",
            tier("basic", ["i1"], ["im1", "im2"]),
            tier("intermediate", ["i2"], ["im3"]),
            tier("advanced", ["i3"], ["im4"])),
    ],
}))

assessment = create_assessment("Pencil & Paper Co", catalog, ["asset-care", "readiness"])
set_target_tier(assessment, catalog, "governance", TierLevel.INTERMEDIATE)
for pid, v in zip(["g1", "g2", "g3", "g4", "g5"], [2, 1, 0, 2, 2]):
    rate_practice(assessment, catalog, "governance", pid, RatingValue(v))
for mid, p in zip(["gm1", "gm2", "gm3"], [3, 2, 1]):
    evaluate_metric_qualitative(assessment, catalog, "governance", mid, p)
for pid, v in zip(["a1", "a2", "a3", "a4", "a5"], [1, 1, 1, 1, 0]):
    rate_practice(assessment, catalog, "asset-care", pid, RatingValue(v))
for mid, p in zip(["am1", "am2", "am3", "am4", "am5"], [2, 2, 1, 1, 0]):
    evaluate_metric_qualitative(assessment, catalog, "asset-care", mid, p)
rate_practice(assessment, catalog, "readiness", "i1", RatingValue(1))
evaluate_metric_qualitative(assessment, catalog, "readiness", "im1", 3)
evaluate_metric_qualitative(assessment, catalog, "readiness", "im2", 0)
set_weight_profile(assessment, catalog, {
    "governance": FactorScores(3, 3, 2, 2),    # total 10
    "asset-care": FactorScores(1, 1, 1, 1),    # total 4
    "readiness": FactorScores(2, 2, 1, 1),     # total 6
})

report = score_assessment(assessment, catalog)
print(f"{'domain':<12} {'PIS':>7} {'MAS':>7} {'DS':>7}  {'level':<10} {'weight':>6}")
for b in report.breakdowns:
    print(
        f"{b.domain_id:<12} {display_number(b.pis):>7} {display_number(b.mas):>7} "
        f"{display_number(b.ds):>7}  {b.level.label:<10} {display_number(b.weight):>6}"
    )
print(f"\nOMS {display_number(report.oms)} -> {report.overall_level.label}\n")

# Every step of the calculation is recorded and replayable.
print("calculation trace (first domain):")
for step in report.trace[:4]:
    print(f"  {step.name}: {step.operation} -> {step.result}")

replayed = replay_trace(report.trace)
exact = all(replayed[s.name] == s.result for s in report.trace)
print(f"\nreplaying all {len(report.trace)} steps reproduces the report exactly: {exact}")

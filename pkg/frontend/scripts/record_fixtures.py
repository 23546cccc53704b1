"""Record live API responses as JSON fixtures for the wizard's tests.

Drives the real service in-process (temp store, no network) through the
worked three-domain flow plus a partial builtin-catalog session, and dumps
each response body verbatim into tests/fixtures/. Re-run after changing
the API or the worked example:

    python frontend/scripts/record_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path
from tempfile import TemporaryDirectory

from fastapi.testclient import TestClient

from ccmf.catalog import parse_catalog
from ccmf.service import ServiceConfig, create_app
from ccmf.store import Store

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def qual(mid: str) -> dict:
    return {
        "metric_id": mid, "description": f"how well {mid} is achieved", "kind": "qualitative",
        "rubric": {
            "3": f"{mid}: fully achieved", "2": f"{mid}: mostly achieved",
            "1": f"{mid}: partially achieved", "0": f"{mid}: not achieved",
        },
    }


def tier(level: str, pids: list[str], mids: list[str]) -> dict:
    return {
        "level": level,
        "practices": [{"practice_id": p, "statement": f"do {p} properly"} for p in pids],
        "metrics": [qual(m) for m in mids],
    }


def dom(did: str, kind: str, *tiers: dict) -> dict:
    return {
        "domain_id": did, "name": did.replace("-", " ").title(), "kind": kind,
        "description": f"covers {did}", "tiers": list(tiers),
    }


WORKED_CATALOG = {
    "catalog_id": "worked", "version": "1", "title": "Test catalog", "illustrative": True,
    "domains": [
        dom("security-governance", "core",
            tier("basic", ["g1", "g2", "g3"], ["gm1", "gm2"]),
            tier("intermediate", ["g4", "g5"], ["gm3"]),
            tier("advanced", ["g6"], ["gm4"])),
        dom("asset-stewardship", "elective",
            tier("basic", ["a1", "a2", "a3", "a4", "a5"],
                 ["am1", "am2", "am3", "am4", "am5"]),
            tier("intermediate", ["a6"], ["am6"]),
            tier("advanced", ["a7"], ["am7"])),
        dom("incident-readiness", "elective",
            tier("basic", ["i1"], ["im1", "im2"]),
            tier("intermediate", ["i2"], ["im3"]),
            tier("advanced", ["i3"], ["im4"])),
    ],
}


def dump(name: str, payload: bytes | dict) -> None:
    path = FIXTURES / name
    if isinstance(payload, dict):
        payload = (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode()
    path.write_bytes(payload)
    print(f"wrote {path.relative_to(Path.cwd()) if path.is_relative_to(Path.cwd()) else path}")


def fill_worked(client: TestClient) -> str:
    aid = client.post(
        "/api/assessments",
        json={
            "organisation": "Worked Example Ltd",
            "electives": ["asset-stewardship", "incident-readiness"],
            "catalog": "worked@1",
        },
    ).json()["assessment_id"]
    base = f"/api/assessments/{aid}"
    client.put(f"{base}/domains/security-governance/target-tier", json={"tier": "intermediate"})
    for pid, value in zip(["g1", "g2", "g3", "g4", "g5"], [2, 1, 0, 2, 2]):
        client.put(f"{base}/domains/security-governance/ratings/{pid}", json={"value": value})
    for mid, points in zip(["gm1", "gm2", "gm3"], [3, 2, 1]):
        client.put(f"{base}/domains/security-governance/evaluations/{mid}", json={"points": points})
    for pid, value in zip(["a1", "a2", "a3", "a4", "a5"], [1, 1, 1, 1, 0]):
        client.put(f"{base}/domains/asset-stewardship/ratings/{pid}", json={"value": value})
    for mid, points in zip(["am1", "am2", "am3", "am4", "am5"], [2, 2, 1, 1, 0]):
        client.put(f"{base}/domains/asset-stewardship/evaluations/{mid}", json={"points": points})
    client.put(f"{base}/domains/incident-readiness/ratings/i1", json={"value": 1})
    client.put(f"{base}/domains/incident-readiness/evaluations/im1", json={"points": 3})
    client.put(f"{base}/domains/incident-readiness/evaluations/im2", json={"points": 0})
    client.put(
        f"{base}/weights",
        json={
            "factors": {
                "security-governance": {
                    "risk_impact": 3, "compliance_requirement": 3,
                    "business_impact": 2, "interdependency": 2,
                },
                "asset-stewardship": {
                    "risk_impact": 1, "compliance_requirement": 1,
                    "business_impact": 1, "interdependency": 1,
                },
                "incident-readiness": {
                    "risk_impact": 2, "compliance_requirement": 2,
                    "business_impact": 1, "interdependency": 1,
                },
            }
        },
    )
    return aid


def fill_builtin_partial(client: TestClient) -> str:
    """A partial session on the builtin catalog; data-security targets Advanced."""
    aid = client.post(
        "/api/assessments", json={"organisation": "Builtin Demo", "electives": ["cloud-security"]}
    ).json()["assessment_id"]
    base = f"/api/assessments/{aid}"
    client.put(f"{base}/domains/data-security/target-tier", json={"tier": "advanced"})
    for pid, value in (("data-classification", 2), ("encryption-baseline", 1),
                       ("key-management", 1), ("field-level-protection", 0)):
        client.put(f"{base}/domains/data-security/ratings/{pid}", json={"value": value})
    client.put(
        f"{base}/domains/data-security/evaluations/encryption-coverage",
        json={"measured_value": 92},
    )
    return aid


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with TemporaryDirectory() as home:
        Store(home).save_catalog(parse_catalog(json.dumps(WORKED_CATALOG)))
        client = TestClient(create_app(ServiceConfig(store_root=Path(home))))

        dump("catalog-builtin.json", client.get("/api/catalogs/ccmf-builtin").content)
        dump("catalog-worked.json", client.get("/api/catalogs/worked@1").content)

        worked = fill_worked(client)
        dump("assessment-worked.json", client.get(f"/api/assessments/{worked}").content)
        dump("completeness-worked.json",
             client.get(f"/api/assessments/{worked}/completeness").content)
        dump("score-worked.json", client.post(f"/api/assessments/{worked}/score").content)
        dump("charts-worked.json", client.get(f"/api/assessments/{worked}/charts").content)
        dump("gaps-worked.json", client.get(f"/api/assessments/{worked}/gaps").content)

        builtin = fill_builtin_partial(client)
        dump("assessment-builtin.json", client.get(f"/api/assessments/{builtin}").content)
        dump("completeness-builtin.json",
             client.get(f"/api/assessments/{builtin}/completeness").content)

        problem = client.post(
            "/api/assessments",
            json={"organisation": "X", "electives": ["made-up-domain"]},
        )
        assert problem.status_code == 422
        dump("problem-unknown-domain.json", problem.content)


if __name__ == "__main__":
    main()

"""Drive the HTTP API in-process, without binding a port.

The same flow works against a real server started with ``ccmf serve``;
here FastAPI's test client exercises the app object directly so the demo
needs no network.
"""

import tempfile

from fastapi.testclient import TestClient

from ccmf.service import ServiceConfig, create_app

with tempfile.TemporaryDirectory() as home:
    client = TestClient(create_app(ServiceConfig(store_root=home)))

    catalogs = client.get("/api/catalogs").json()["catalogs"]
    print("catalogs:", [(c["catalog_id"], c["version"]) for c in catalogs])

    created = client.post(
        "/api/assessments",
        json={"organisation": "API Demo Inc", "electives": ["cloud-security"]},
    ).json()
    aid = created["assessment_id"]
    print(f"created assessment {aid} with {len(created['selections'])} selections")

    client.put(
        f"/api/assessments/{aid}/domains/data-security/evaluations/encryption-coverage",
        json={"measured_value": 92},
    )
    client.put(
        f"/api/assessments/{aid}/domains/data-security/ratings/data-classification",
        json={"value": 2},
    )

    progress = client.get(f"/api/assessments/{aid}/completeness").json()
    print("complete yet:", progress["overall_complete"])

    strict = client.post(f"/api/assessments/{aid}/score")
    print(f"strict scoring -> {strict.status_code} {strict.json()['code']} "
          f"({len(strict.json()['details'])} missing items)")

    lenient = client.post(f"/api/assessments/{aid}/score?missing_as_zero=true").json()
    print(f"missing-as-zero OMS: {lenient['oms']['display']} -> {lenient['overall_level']}")

    csv_report = client.get(f"/api/assessments/{aid}/report?format=csv&missing_as_zero=true")
    print("\nCSV report (first lines):")
    for line in csv_report.text.split("\r\n")[:3]:
        print(f"  {line}")

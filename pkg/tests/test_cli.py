"""CLI behaviour: workflows, exit codes, output formats."""

from __future__ import annotations

import csv
import io
import json

import pytest
from click.testing import CliRunner

from ccmf.catalog import catalog_to_json
from ccmf.cli import main

from conftest import catalog_doc, domain_doc, qualitative_metric, tier_doc


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def worked_catalog_file(tmp_path, worked_catalog):
    path = tmp_path / "worked.json"
    path.write_bytes(catalog_to_json(worked_catalog))
    return path


@pytest.fixture
def store_root(tmp_path):
    return tmp_path / "store"


def cli(runner, store_root, *args, **kwargs):
    return runner.invoke(main, ["--store", str(store_root), *args], **kwargs)


def make_worked_assessment(runner, store_root, worked_catalog_file) -> str:
    result = cli(
        runner, store_root,
        "--catalog", str(worked_catalog_file), "--quiet",
        "assess", "new", "--org", "Acme",
        "--elect", "asset-stewardship", "--elect", "incident-readiness",
    )
    assert result.exit_code == 0, result.output
    aid = result.output.strip()
    steps = [
        ["assess", "tier", aid, "security-governance", "intermediate"],
        *(
            ["assess", "rate", aid, "security-governance", pid, str(v)]
            for pid, v in zip(["g1", "g2", "g3", "g4", "g5"], [2, 1, 0, 2, 2])
        ),
        *(
            ["assess", "eval", aid, "security-governance", mid, "--points", str(p)]
            for mid, p in zip(["gm1", "gm2", "gm3"], [3, 2, 1])
        ),
        *(
            ["assess", "rate", aid, "asset-stewardship", pid, str(v)]
            for pid, v in zip(["a1", "a2", "a3", "a4", "a5"], [1, 1, 1, 1, 0])
        ),
        *(
            ["assess", "eval", aid, "asset-stewardship", mid, "--points", str(p)]
            for mid, p in zip(["am1", "am2", "am3", "am4", "am5"], [2, 2, 1, 1, 0])
        ),
        ["assess", "rate", aid, "incident-readiness", "i1", "1"],
        ["assess", "eval", aid, "incident-readiness", "im1", "--points", "3"],
        ["assess", "eval", aid, "incident-readiness", "im2", "--points", "0"],
        ["assess", "weights", aid, "security-governance", "3", "3", "2", "2"],
        ["assess", "weights", aid, "asset-stewardship", "1", "1", "1", "1"],
        ["assess", "weights", aid, "incident-readiness", "2", "2", "1", "1"],
    ]
    for step in steps:
        result = cli(runner, store_root, "--quiet", *step)
        assert result.exit_code == 0, (step, result.output)
    return aid


class TestCatalogCommands:
    def test_validate_good_file(self, runner, store_root, worked_catalog_file):
        result = cli(runner, store_root, "catalog", "validate", str(worked_catalog_file))
        assert result.exit_code == 0
        assert "is valid" in result.output

    def test_validate_reports_finding_with_path(self, runner, store_root, tmp_path):
        doc = catalog_doc(
            [
                domain_doc(
                    "broken",
                    "core",
                    [
                        tier_doc("basic", ["p1"], [qualitative_metric("m1")]),
                        tier_doc("intermediate", [], [qualitative_metric("m2")]),
                        tier_doc("advanced", ["p3"], [qualitative_metric("m3")]),
                    ],
                )
            ]
        )
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(doc))
        result = cli(runner, store_root, "catalog", "validate", str(bad))
        assert result.exit_code == 1
        assert "domains[0].tiers[Intermediate].practices" in result.output

    def test_validate_malformed_json(self, runner, store_root, tmp_path):
        bad = tmp_path / "nope.json"
        bad.write_text("{]")
        result = cli(runner, store_root, "catalog", "validate", str(bad))
        assert result.exit_code == 1
        assert "SyntaxError" in result.output

    def test_show_builtin_table(self, runner, store_root):
        result = cli(runner, store_root, "catalog", "show")
        assert result.exit_code == 0
        assert "risk-management" in result.output
        assert "cloud-security" in result.output

    def test_show_json(self, runner, store_root):
        result = cli(runner, store_root, "--format", "json", "catalog", "show")
        payload = json.loads(result.output)
        assert payload["catalog_id"] == "ccmf-builtin"
        assert len(payload["domains"]) == 21


class TestAssessCommands:
    def test_new_prints_id(self, runner, store_root):
        result = cli(runner, store_root, "--quiet", "assess", "new", "--org", "Acme")
        assert result.exit_code == 0
        aid = result.output.strip()
        assert len(aid) == 36  # uuid4

    def test_new_with_unknown_elective_exits_1(self, runner, store_root):
        result = cli(runner, store_root, "assess", "new", "--org", "A", "--elect", "zzz")
        assert result.exit_code == 1
        assert "UnknownDomain" in result.output

    def test_rate_out_of_range_is_usage_error(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "assess", "rate", aid, "security-governance", "g1", "3")
        assert result.exit_code == 2

    def test_eval_requires_exactly_one_mode(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "assess", "eval", aid, "security-governance", "gm1")
        assert result.exit_code == 2
        result = cli(
            runner, store_root, "assess", "eval", aid, "security-governance", "gm1",
            "--points", "2", "--value", "5",
        )
        assert result.exit_code == 2

    def test_eval_points_out_of_range_is_usage_error(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(
            runner, store_root, "assess", "eval", aid, "security-governance", "gm1",
            "--points", "4",
        )
        assert result.exit_code == 2

    def test_quantitative_eval_prints_band_points(self, runner, store_root):
        created = cli(runner, store_root, "--quiet", "assess", "new", "--org", "Acme")
        aid = created.output.strip()
        result = cli(
            runner, store_root,
            "assess", "eval", aid, "data-security", "encryption-coverage", "--value", "92",
        )
        assert result.exit_code == 0
        assert "3 points" in result.output

    def test_weights_factor_out_of_range_is_usage_error(
        self, runner, store_root, worked_catalog_file
    ):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "assess", "weights", aid, "security-governance",
                     "4", "1", "1", "1")
        assert result.exit_code == 2

    def test_unknown_assessment_exits_1(self, runner, store_root):
        result = cli(runner, store_root, "score", "missing-id")
        assert result.exit_code == 1
        assert "NotFound" in result.output


class TestScoreCommand:
    def test_human_output(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "score", aid)
        assert result.exit_code == 0
        assert "OMS 57.17" in result.output
        assert "Managed" in result.output
        assert "70.00" in result.output

    def test_trace_output(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "score", aid, "--trace")
        assert "pis[security-governance] = 100 x 7 / 10 = 70.00" in result.output
        assert "weight[security-governance] = 10 / 20 = 0.50" in result.output

    def test_incomplete_strict_exits_1_listing_items(self, runner, store_root, worked_catalog_file):
        created = cli(
            runner, store_root, "--catalog", str(worked_catalog_file), "--quiet",
            "assess", "new", "--org", "Acme",
        )
        aid = created.output.strip()
        result = cli(runner, store_root, "score", aid)
        assert result.exit_code == 1
        assert "Incomplete" in result.output
        assert "g1" in result.output

    def test_missing_as_zero(self, runner, store_root, worked_catalog_file):
        created = cli(
            runner, store_root, "--catalog", str(worked_catalog_file), "--quiet",
            "assess", "new", "--org", "Acme",
        )
        aid = created.output.strip()
        result = cli(runner, store_root, "score", aid, "--missing-as-zero")
        assert result.exit_code == 0
        assert "OMS 0.00" in result.output
        assert "Initial" in result.output

    def test_json_output_parses(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "--format", "json", "score", aid)
        payload = json.loads(result.output)
        assert payload["oms"]["display"] == "57.17"
        assert payload["overall_level"] == "Managed"


class TestReportAndGaps:
    def test_csv_report_to_file(self, runner, store_root, worked_catalog_file, tmp_path):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        out = tmp_path / "report.csv"
        result = cli(
            runner, store_root, "report", aid, "--format", "csv", "--out", str(out)
        )
        assert result.exit_code == 0
        rows = list(csv.reader(io.StringIO(out.read_text())))
        assert len(rows) == 5
        assert rows[-1][0] == "OVERALL"

    def test_json_report_to_stdout(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "report", aid)
        payload = json.loads(result.output)
        assert "gaps" in payload

    def test_gaps_human_output(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "gaps", aid)
        assert result.exit_code == 0
        assert "g3" in result.output
        assert "gap item(s)" in result.output

    def test_gaps_json(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "--format", "json", "gaps", aid)
        payload = json.loads(result.output)
        assert payload["domains"][0]["items"][0]["id"] == "g3"


class TestUsageErrors:
    def test_unknown_command(self, runner, store_root):
        result = cli(runner, store_root, "frobnicate")
        assert result.exit_code == 2

    def test_missing_required_arg(self, runner, store_root):
        result = cli(runner, store_root, "assess", "new")
        assert result.exit_code == 2

    def test_bad_tier_token(self, runner, store_root, worked_catalog_file):
        aid = make_worked_assessment(runner, store_root, worked_catalog_file)
        result = cli(runner, store_root, "assess", "tier", aid, "security-governance", "expert")
        assert result.exit_code == 2

"""Command-line front door for catalog validation, assessments, and scoring.

Exit codes: 0 on success, 1 on domain errors (validation failures,
incomplete assessments, unknown ids), 2 on usage errors. All numbers shown
come from the same library calls the HTTP service uses; ``--format json``
output is byte-identical to the service's responses for the same state.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import click

from . import assessment as assessment_ops
from .assessment import FactorScores, RatingValue, assessment_to_dict
from .catalog import (
    Catalog,
    TierLevel,
    builtin_catalog,
    catalog_to_dict,
    parse_catalog,
    validate_catalog,
)
from .errors import CcmfError
from .reporting import export, gap_analysis
from .scoring import (
    ScoreReport,
    TraceStep,
    display_number,
    report_to_json,
    score_assessment,
)
from .service import ServiceConfig, serve
from .store import Store

TIER_CHOICES = click.Choice(["basic", "intermediate", "advanced"])


@dataclass
class CliContext:
    store: Store
    catalog_ref: Optional[str]
    output_format: Optional[str]
    quiet: bool

    def resolve_catalog(self) -> Catalog:
        """--catalog accepts a file path or a stored ``id[@version]`` reference."""
        if self.catalog_ref is None:
            return builtin_catalog()
        path = Path(self.catalog_ref)
        if path.is_file():
            return parse_catalog(path.read_bytes())
        return self.store.get_catalog_by_ref(self.catalog_ref)


def domain_errors(fn):
    """Map engine errors to exit code 1 with the error code in the message."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except CcmfError as exc:
            message = f"{exc.code}: {exc.message}"
            if isinstance(exc.details, list) and exc.details:
                shown = exc.details[:20]
                lines = "\n".join(f"  - {item}" for item in shown)
                if len(exc.details) > len(shown):
                    lines += f"\n  ... and {len(exc.details) - len(shown)} more"
                message = f"{message}\n{lines}"
            raise click.ClickException(message) from exc

    return wrapper


def _echo_json(payload: Any) -> None:
    click.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))).rstrip(),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


@click.group()
@click.option(
    "--store",
    "store_root",
    type=click.Path(path_type=Path),
    default=None,
    help="Store root directory (default: $CCMF_HOME or ./.ccmf).",
)
@click.option(
    "--catalog",
    "catalog_ref",
    default=None,
    help="Catalog to use: a file path or a stored id[@version]; default is the built-in catalog.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json"]),
    default=None,
    help="Emit machine-readable JSON instead of tables.",
)
@click.option("--quiet", is_flag=True, help="Suppress informational chatter.")
@click.pass_context
def main(
    ctx: click.Context,
    store_root: Optional[Path],
    catalog_ref: Optional[str],
    output_format: Optional[str],
    quiet: bool,
) -> None:
    """Assess cybersecurity capability maturity against a tiered catalog."""
    ctx.obj = CliContext(
        store=Store(store_root),
        catalog_ref=catalog_ref,
        output_format=output_format,
        quiet=quiet,
    )


# ---------------------------------------------------------------------------
# catalog subcommands
# ---------------------------------------------------------------------------

@main.group()
def catalog() -> None:
    """Inspect and validate capability catalogs."""


@catalog.command("validate")
@click.argument("file", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_obj
@domain_errors
def catalog_validate(cli: CliContext, file: Path) -> None:
    """Parse FILE and report every catalog invariant violation."""
    parsed = parse_catalog(file.read_bytes())  # Syntax/Shape errors -> exit 1
    report = validate_catalog(parsed)
    if cli.output_format == "json":
        _echo_json(report.to_dict())
    else:
        for finding in report.findings:
            click.echo(f"{finding.severity}: {finding.path}: {finding.message}")
        if report.valid and not cli.quiet:
            click.echo(f"catalog {parsed.ref} is valid ({len(parsed.domains)} domains)")
    if not report.valid:
        sys.exit(1)


@catalog.command("show")
@click.pass_obj
@domain_errors
def catalog_show(cli: CliContext) -> None:
    """Show the selected catalog (built-in unless --catalog is given)."""
    cat = cli.resolve_catalog()
    if cli.output_format == "json":
        _echo_json(catalog_to_dict(cat))
        return
    rows = []
    for domain in cat.domains:
        practices = sum(len(t.practices) for t in domain.tiers)
        metrics = sum(len(t.metrics) for t in domain.tiers)
        rows.append(
            [domain.domain_id, domain.name, domain.kind.value, str(practices), str(metrics)]
        )
    click.echo(f"{cat.title} ({cat.ref})")
    click.echo(_table(["domain_id", "name", "kind", "practices", "metrics"], rows))


# ---------------------------------------------------------------------------
# assess subcommands
# ---------------------------------------------------------------------------

@main.group()
def assess() -> None:
    """Create and fill in assessments."""


def _load(cli: CliContext, assessment_id: str):
    assessment = cli.store.load_assessment(assessment_id)
    cat = cli.store.get_catalog(assessment.catalog_id, assessment.catalog_version)
    return assessment, cat


def _emit_assessment(cli: CliContext, assessment) -> None:
    if cli.output_format == "json":
        _echo_json(assessment_to_dict(assessment))


@assess.command("new")
@click.option("--org", required=True, help="Organisation being assessed.")
@click.option("--elect", "electives", multiple=True, help="Elective domain id (repeatable).")
@click.pass_obj
@domain_errors
def assess_new(cli: CliContext, org: str, electives: tuple[str, ...]) -> None:
    """Create an assessment over all core domains plus chosen electives."""
    cat = cli.resolve_catalog()
    builtin = builtin_catalog()
    if (cat.catalog_id, cat.version) != (builtin.catalog_id, builtin.version):
        cli.store.save_catalog(cat)  # later commands resolve the pin from the store
    assessment = assessment_ops.create_assessment(org, cat, list(electives))
    cli.store.save_assessment(assessment)
    if cli.output_format == "json":
        _echo_json(assessment_to_dict(assessment))
        return
    click.echo(assessment.assessment_id)
    if not cli.quiet:
        click.echo(
            f"created assessment for {org!r} against {cat.ref}: "
            f"{len(assessment.selections)} domains, all targeting Basic"
        )


@assess.command("tier")
@click.argument("assessment_id")
@click.argument("domain_id")
@click.argument("tier", type=TIER_CHOICES)
@click.pass_obj
@domain_errors
def assess_tier(cli: CliContext, assessment_id: str, domain_id: str, tier: str) -> None:
    """Set the target tier for one domain."""
    assessment, cat = _load(cli, assessment_id)
    assessment_ops.set_target_tier(assessment, cat, domain_id, TierLevel.from_token(tier))
    cli.store.save_assessment(assessment)
    _emit_assessment(cli, assessment)
    if cli.output_format is None and not cli.quiet:
        click.echo(f"{domain_id}: target tier set to {tier}")


@assess.command("rate")
@click.argument("assessment_id")
@click.argument("domain_id")
@click.argument("practice_id")
@click.argument("value", type=click.Choice(["0", "1", "2"]))
@click.option("--note", default=None, help="Free-text note stored with the rating.")
@click.pass_obj
@domain_errors
def assess_rate(
    cli: CliContext,
    assessment_id: str,
    domain_id: str,
    practice_id: str,
    value: str,
    note: Optional[str],
) -> None:
    """Rate a practice: 0=Not, 1=Partially, 2=Fully Implemented."""
    assessment, cat = _load(cli, assessment_id)
    rating = RatingValue(int(value))
    assessment_ops.rate_practice(assessment, cat, domain_id, practice_id, rating, note)
    cli.store.save_assessment(assessment)
    _emit_assessment(cli, assessment)
    if cli.output_format is None and not cli.quiet:
        click.echo(f"{domain_id}/{practice_id}: {rating.label}")


@assess.command("eval")
@click.argument("assessment_id")
@click.argument("domain_id")
@click.argument("metric_id")
@click.option("--value", "measured_value", type=float, default=None, help="Raw measurement (quantitative metrics).")
@click.option("--points", type=click.IntRange(0, 3), default=None, help="Rubric level (qualitative metrics).")
@click.option("--note", default=None, help="Free-text note stored with the evaluation.")
@click.pass_obj
@domain_errors
def assess_eval(
    cli: CliContext,
    assessment_id: str,
    domain_id: str,
    metric_id: str,
    measured_value: Optional[float],
    points: Optional[int],
    note: Optional[str],
) -> None:
    """Evaluate a metric by raw value (banded server-side) or rubric points."""
    if (measured_value is None) == (points is None):
        raise click.UsageError("provide exactly one of --value or --points")
    assessment, cat = _load(cli, assessment_id)
    if measured_value is not None:
        awarded, _ = assessment_ops.evaluate_metric_quantitative(
            assessment, cat, domain_id, metric_id, measured_value, note
        )
    else:
        assessment_ops.evaluate_metric_qualitative(
            assessment, cat, domain_id, metric_id, points, note
        )
        awarded = points
    cli.store.save_assessment(assessment)
    _emit_assessment(cli, assessment)
    if cli.output_format is None and not cli.quiet:
        click.echo(f"{domain_id}/{metric_id}: {awarded} points")


@assess.command("weights")
@click.argument("assessment_id")
@click.argument("domain_id")
@click.argument("risk_impact", type=click.IntRange(1, 3))
@click.argument("compliance_requirement", type=click.IntRange(1, 3))
@click.argument("business_impact", type=click.IntRange(1, 3))
@click.argument("interdependency", type=click.IntRange(1, 3))
@click.pass_obj
@domain_errors
def assess_weights(
    cli: CliContext,
    assessment_id: str,
    domain_id: str,
    risk_impact: int,
    compliance_requirement: int,
    business_impact: int,
    interdependency: int,
) -> None:
    """Set the four 1-3 importance factors for one domain.

    Repeat per domain; scoring requires factors for every selected domain
    (or none at all, which falls back to equal weights).
    """
    assessment, cat = _load(cli, assessment_id)
    factors = dict(assessment.weight_profile.factors) if assessment.weight_profile else {}
    factors[domain_id] = FactorScores(
        risk_impact, compliance_requirement, business_impact, interdependency
    )
    assessment_ops.set_weight_profile(assessment, cat, factors)
    cli.store.save_assessment(assessment)
    _emit_assessment(cli, assessment)
    if cli.output_format is None and not cli.quiet:
        covered = len(assessment.weight_profile.factors)
        click.echo(f"{domain_id}: factors recorded ({covered}/{len(assessment.selections)} domains)")


# ---------------------------------------------------------------------------
# scoring, reporting, serving
# ---------------------------------------------------------------------------

def _format_step(step: TraceStep) -> str:
    i = step.inputs
    op = step.operation
    if op == "practice_implementation_score":
        return (
            f"{step.name} = 100 x {i['numerator']} / {i['denominator']}"
            f" = {display_number(step.result)}"
        )
    if op == "metric_achievement_score":
        return (
            f"{step.name} = 100 x {i['numerator']} / {i['denominator']}"
            f" = {display_number(step.result)}"
        )
    if op == "domain_score":
        return (
            f"{step.name} = ({display_number(i['pis'])} + {display_number(i['mas'])}) / 2"
            f" = {display_number(step.result)}"
        )
    if op == "maturity_level":
        return f"{step.name} = level({display_number(i['score'])}) = {step.result}"
    if op == "weight_factor_total":
        return (
            f"{step.name} = {i['risk_impact']} + {i['compliance_requirement']} + "
            f"{i['business_impact']} + {i['interdependency']} = {step.result}"
        )
    if op == "weight_normalise":
        return (
            f"{step.name} = {i['factor_total']} / {i['grand_total']}"
            f" = {display_number(step.result)}"
        )
    if op == "equal_weight":
        return f"{step.name} = 1 / {i['domain_count']} = {display_number(step.result)} (default equal weights)"
    if op == "overall_maturity_score":
        terms = " + ".join(
            f"{display_number(i['weight_by_domain'][d])} x {display_number(ds)}"
            for d, ds in i["ds_by_domain"].items()
        )
        return f"{step.name} = {terms} = {display_number(step.result)}"
    return f"{step.name} = {step.result}"


def _score_table(report: ScoreReport) -> str:
    rows = [
        [
            b.domain_id,
            b.target_tier.token,
            display_number(b.pis),
            display_number(b.mas),
            display_number(b.ds),
            b.level.label,
            display_number(b.weight),
        ]
        for b in report.breakdowns
    ]
    return _table(["domain", "tier", "PIS", "MAS", "DS", "level", "weight"], rows)


@main.command("score")
@click.argument("assessment_id")
@click.option("--missing-as-zero", is_flag=True, help="Score unrated items as 0 instead of failing.")
@click.option("--trace", "show_trace", is_flag=True, help="Print the step-by-step calculation.")
@click.pass_obj
@domain_errors
def score(cli: CliContext, assessment_id: str, missing_as_zero: bool, show_trace: bool) -> None:
    """Compute PIS/MAS/DS per domain, weights, OMS, and maturity levels."""
    assessment, cat = _load(cli, assessment_id)
    report = score_assessment(assessment, cat, missing_as_zero=missing_as_zero)
    if cli.output_format == "json":
        click.echo(report_to_json(report), nl=False)
        return
    click.echo(_score_table(report))
    click.echo(f"OMS {display_number(report.oms)}  level {report.overall_level.label}")
    if show_trace:
        click.echo("")
        for step in report.trace:
            click.echo(_format_step(step))


@main.command("report")
@click.argument("assessment_id")
@click.option("--format", "export_format", type=click.Choice(["json", "csv"]), default="json")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write to a file instead of stdout.")
@click.option("--missing-as-zero", is_flag=True)
@click.pass_obj
@domain_errors
def report_cmd(
    cli: CliContext,
    assessment_id: str,
    export_format: str,
    out: Optional[Path],
    missing_as_zero: bool,
) -> None:
    """Export the score report (with gaps embedded) as JSON or CSV."""
    assessment, cat = _load(cli, assessment_id)
    score_report = score_assessment(assessment, cat, missing_as_zero=missing_as_zero)
    gaps = gap_analysis(assessment, cat, score_report)
    payload = export(score_report, gaps, export_format)
    if out is not None:
        out.write_bytes(payload)
        if not cli.quiet:
            click.echo(f"wrote {out}")
    else:
        click.echo(payload, nl=False)


@main.command("gaps")
@click.argument("assessment_id")
@click.option("--missing-as-zero", is_flag=True)
@click.pass_obj
@domain_errors
def gaps_cmd(cli: CliContext, assessment_id: str, missing_as_zero: bool) -> None:
    """List unimplemented practices and underachieved metrics per domain."""
    assessment, cat = _load(cli, assessment_id)
    score_report = score_assessment(assessment, cat, missing_as_zero=missing_as_zero)
    gap_report = gap_analysis(assessment, cat, score_report)
    if cli.output_format == "json":
        _echo_json(gap_report.to_dict())
        return
    for domain in gap_report.domains:
        if not domain.items:
            continue
        click.echo(f"{domain.domain_name} ({domain.domain_id})")
        rows = [
            [item.tier.token, item.kind, item.item_id, f"{item.current}/{item.maximum}"]
            for item in domain.items
        ]
        click.echo(_table(["tier", "kind", "id", "score"], rows))
        click.echo("")
    total = sum(len(d.items) for d in gap_report.domains)
    click.echo(f"{total} gap item(s) across {len(gap_report.domains)} domain(s)")


@main.command("serve")
@click.option("--bind", default="127.0.0.1", show_default=True, help="Bind address.")
@click.option("--port", type=int, default=8787, show_default=True, help="Port.")
@click.option(
    "--static",
    "static_dir",
    type=click.Path(exists=True, file_okay=False, path_type=Path),
    default=None,
    help="Directory of UI assets to serve at /.",
)
@click.pass_obj
@domain_errors
def serve_cmd(cli: CliContext, bind: str, port: int, static_dir: Optional[Path]) -> None:
    """Run the HTTP API (loopback-only unless --bind says otherwise)."""
    serve(
        ServiceConfig(
            bind=bind, port=port, store_root=cli.store.root, static_dir=static_dir
        )
    )


if __name__ == "__main__":
    main()

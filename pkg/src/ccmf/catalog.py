"""Capability catalog: domains, tiers, practices, metrics and scoring bands.

A catalog is a versioned taxonomy. Each domain is either core (mandatory
for every assessment) or elective, and stratifies its content into three
tiers (Basic, Intermediate, Advanced). Practices are rated on a 0-2
implementation scale; metrics are scored 0-3 either through numeric
threshold bands (quantitative) or a four-level rubric (qualitative).

Parsing is purely structural; semantic rules are enforced separately by
:func:`validate_catalog`, which reports findings instead of raising.
A parsed, validated catalog is immutable and safe to share.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable, Optional

from .errors import CatalogSyntaxError, ShapeError

SLUG_RE = re.compile(r"^[a-z0-9]+(?:-[a-z0-9]+)*$")

RUBRIC_KEYS = ("3", "2", "1", "0")


class TierLevel(enum.IntEnum):
    """Tier stratification; assessment scope is cumulative up to a target."""

    BASIC = 1
    INTERMEDIATE = 2
    ADVANCED = 3

    @property
    def token(self) -> str:
        """Wire-format token, e.g. ``"basic"``."""
        return self.name.lower()

    @property
    def label(self) -> str:
        """Display label, e.g. ``"Basic"``."""
        return self.name.capitalize()

    @classmethod
    def from_token(cls, token: str) -> "TierLevel":
        try:
            return cls[token.upper()]
        except KeyError:
            raise ValueError(f"unknown tier {token!r}") from None


class DomainKind(enum.Enum):
    CORE = "core"
    ELECTIVE = "elective"


class MetricKind(enum.Enum):
    QUANTITATIVE = "quantitative"
    QUALITATIVE = "qualitative"


class Direction(enum.Enum):
    HIGHER_IS_BETTER = "higher_is_better"
    LOWER_IS_BETTER = "lower_is_better"


@dataclass(frozen=True)
class Band:
    """Half-open measurement interval [lower, upper) worth ``points``.

    A missing bound means the interval is unbounded on that side, so the
    extreme bands of a metric cover the whole real line between them.
    """

    points: int
    lower: Optional[float] = None
    upper: Optional[float] = None

    def contains(self, value: float) -> bool:
        if self.lower is not None and value < self.lower:
            return False
        if self.upper is not None and value >= self.upper:
            return False
        return True

    def describe(self) -> str:
        lo = "-inf" if self.lower is None else f"{self.lower:g}"
        hi = "+inf" if self.upper is None else f"{self.upper:g}"
        return f"[{lo}, {hi})"


@dataclass(frozen=True)
class Metric:
    metric_id: str
    description: str
    kind: MetricKind
    unit: Optional[str] = None
    direction: Optional[Direction] = None
    bands: tuple[Band, ...] = ()
    rubric: tuple[str, ...] = ()  # rubric text for 3, 2, 1, 0 points, in that order

    def band_for(self, value: float) -> Band:
        """Return the unique band containing ``value`` (quantitative only)."""
        if self.kind is not MetricKind.QUANTITATIVE:
            raise ValueError(f"metric {self.metric_id} has no bands")
        for band in self.bands:
            if band.contains(value):
                return band
        raise ValueError(f"no band of {self.metric_id} contains {value!r}")

    def rubric_text(self, points: int) -> str:
        """Rubric wording for a 0-3 point level (qualitative only)."""
        if self.kind is not MetricKind.QUALITATIVE:
            raise ValueError(f"metric {self.metric_id} has no rubric")
        return self.rubric[3 - points]


@dataclass(frozen=True)
class Practice:
    practice_id: str
    statement: str


@dataclass(frozen=True)
class Tier:
    level: TierLevel
    practices: tuple[Practice, ...]
    metrics: tuple[Metric, ...]


@dataclass(frozen=True)
class Domain:
    domain_id: str
    name: str
    kind: DomainKind
    description: str
    tiers: tuple[Tier, ...]

    def tier(self, level: TierLevel) -> Tier:
        for tier in self.tiers:
            if tier.level is level:
                return tier
        raise KeyError(f"domain {self.domain_id} has no {level.label} tier")

    def tiers_up_to(self, target: TierLevel) -> tuple[Tier, ...]:
        """Tiers in scope for a target tier: the target and everything below."""
        return tuple(t for t in self.tiers if t.level <= target)

    def find_practice(self, practice_id: str) -> Optional[tuple[Practice, TierLevel]]:
        for tier in self.tiers:
            for practice in tier.practices:
                if practice.practice_id == practice_id:
                    return practice, tier.level
        return None

    def find_metric(self, metric_id: str) -> Optional[tuple[Metric, TierLevel]]:
        for tier in self.tiers:
            for metric in tier.metrics:
                if metric.metric_id == metric_id:
                    return metric, tier.level
        return None


@dataclass(frozen=True)
class Catalog:
    catalog_id: str
    version: str
    title: str
    domains: tuple[Domain, ...]
    illustrative: bool = False

    @property
    def ref(self) -> str:
        """Stable reference string ``<catalog_id>@<version>``."""
        return f"{self.catalog_id}@{self.version}"

    def find_domain(self, domain_id: str) -> Optional[Domain]:
        for domain in self.domains:
            if domain.domain_id == domain_id:
                return domain
        return None

    def core_domains(self) -> tuple[Domain, ...]:
        return tuple(d for d in self.domains if d.kind is DomainKind.CORE)

    def elective_domains(self) -> tuple[Domain, ...]:
        return tuple(d for d in self.domains if d.kind is DomainKind.ELECTIVE)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    path: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"severity": self.severity, "path": self.path, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...]

    @property
    def valid(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    def errors(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "error")

    def to_dict(self) -> dict[str, Any]:
        return {"valid": self.valid, "findings": [f.to_dict() for f in self.findings]}


# ---------------------------------------------------------------------------
# Parsing (structural only)
# ---------------------------------------------------------------------------

def _no_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict[str, Any]:
    obj: dict[str, Any] = {}
    for key, value in pairs:
        if key in obj:
            raise CatalogSyntaxError(f"duplicate field {key!r} in object")
        obj[key] = value
    return obj


def _require(obj: dict, path: str, name: str) -> Any:
    if name not in obj:
        raise ShapeError(f"missing required field at {path}.{name}")
    return obj[name]


def _string(obj: dict, path: str, name: str) -> str:
    value = _require(obj, path, name)
    if not isinstance(value, str):
        raise ShapeError(f"{path}.{name} must be a string")
    return value


def _boolean(obj: dict, path: str, name: str, default: bool) -> bool:
    if name not in obj:
        return default
    value = obj[name]
    if not isinstance(value, bool):
        raise ShapeError(f"{path}.{name} must be a boolean")
    return value


def _array(obj: dict, path: str, name: str) -> list:
    value = _require(obj, path, name)
    if not isinstance(value, list):
        raise ShapeError(f"{path}.{name} must be an array")
    return value


def _object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise ShapeError(f"{path} must be an object")
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ShapeError(f"{path} must be a number")
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ShapeError(f"{path} must be an integer")
    return value


def _enum_token(obj: dict, path: str, name: str, allowed: Iterable[str]) -> str:
    value = _string(obj, path, name)
    if value not in tuple(allowed):
        raise ShapeError(
            f"{path}.{name} must be one of {', '.join(allowed)} (got {value!r})"
        )
    return value


def _reject_unknown(obj: dict, path: str, known: Iterable[str]) -> None:
    unknown = [k for k in obj if k not in tuple(known)]
    if unknown:
        raise ShapeError(f"unknown field {unknown[0]!r} at {path}")


def _parse_band(raw: Any, path: str) -> Band:
    obj = _object(raw, path)
    _reject_unknown(obj, path, ("points", "lower", "upper"))
    points = _integer(_require(obj, path, "points"), f"{path}.points")
    lower = _number(obj["lower"], f"{path}.lower") if "lower" in obj else None
    upper = _number(obj["upper"], f"{path}.upper") if "upper" in obj else None
    return Band(points=points, lower=lower, upper=upper)


def _parse_metric(raw: Any, path: str) -> Metric:
    obj = _object(raw, path)
    _reject_unknown(
        obj,
        path,
        ("metric_id", "description", "kind", "unit", "direction", "bands", "rubric"),
    )
    metric_id = _string(obj, path, "metric_id")
    description = _string(obj, path, "description")
    kind = MetricKind(_enum_token(obj, path, "kind", ("quantitative", "qualitative")))

    if kind is MetricKind.QUANTITATIVE:
        if "rubric" in obj:
            raise ShapeError(f"{path}.rubric is not allowed on a quantitative metric")
        unit = _string(obj, path, "unit") if "unit" in obj else None
        direction = Direction(
            _enum_token(obj, path, "direction", ("higher_is_better", "lower_is_better"))
        )
        bands = tuple(
            _parse_band(b, f"{path}.bands[{i}]")
            for i, b in enumerate(_array(obj, path, "bands"))
        )
        return Metric(metric_id, description, kind, unit=unit, direction=direction, bands=bands)

    for banned in ("unit", "direction", "bands"):
        if banned in obj:
            raise ShapeError(f"{path}.{banned} is not allowed on a qualitative metric")
    rubric_obj = _object(_require(obj, path, "rubric"), f"{path}.rubric")
    if set(rubric_obj) != set(RUBRIC_KEYS):
        raise ShapeError(f'{path}.rubric must have exactly the keys "3", "2", "1", "0"')
    rubric = tuple(
        _string(rubric_obj, f"{path}.rubric", key) for key in RUBRIC_KEYS
    )
    return Metric(metric_id, description, kind, rubric=rubric)


def _parse_practice(raw: Any, path: str) -> Practice:
    obj = _object(raw, path)
    _reject_unknown(obj, path, ("practice_id", "statement"))
    return Practice(_string(obj, path, "practice_id"), _string(obj, path, "statement"))


def _parse_tier(raw: Any, path: str) -> Tier:
    obj = _object(raw, path)
    _reject_unknown(obj, path, ("level", "practices", "metrics"))
    level = TierLevel.from_token(
        _enum_token(obj, path, "level", ("basic", "intermediate", "advanced"))
    )
    practices = tuple(
        _parse_practice(p, f"{path}.practices[{i}]")
        for i, p in enumerate(_array(obj, path, "practices"))
    )
    metrics = tuple(
        _parse_metric(m, f"{path}.metrics[{i}]")
        for i, m in enumerate(_array(obj, path, "metrics"))
    )
    return Tier(level, practices, metrics)


def _parse_domain(raw: Any, path: str) -> Domain:
    obj = _object(raw, path)
    _reject_unknown(obj, path, ("domain_id", "name", "kind", "description", "tiers"))
    return Domain(
        domain_id=_string(obj, path, "domain_id"),
        name=_string(obj, path, "name"),
        kind=DomainKind(_enum_token(obj, path, "kind", ("core", "elective"))),
        description=_string(obj, path, "description"),
        tiers=tuple(
            _parse_tier(t, f"{path}.tiers[{i}]")
            for i, t in enumerate(_array(obj, path, "tiers"))
        ),
    )


def parse_catalog(document: bytes | str) -> Catalog:
    """Parse a UTF-8 JSON catalog document into a :class:`Catalog`.

    Only shape is checked here (field presence, scalar types, enum tokens,
    unknown-field rejection). Semantic rules such as id uniqueness or band
    geometry are the job of :func:`validate_catalog`.

    Raises:
        CatalogSyntaxError: malformed JSON, bad encoding, duplicate keys.
        ShapeError: missing/unknown fields or wrong scalar types.
    """
    if isinstance(document, bytes):
        try:
            text = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CatalogSyntaxError(f"document is not valid UTF-8: {exc}") from exc
    else:
        text = document
    try:
        raw = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise CatalogSyntaxError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from exc

    obj = _object(raw, "$")
    _reject_unknown(obj, "$", ("catalog_id", "version", "title", "illustrative", "domains"))
    return Catalog(
        catalog_id=_string(obj, "$", "catalog_id"),
        version=_string(obj, "$", "version"),
        title=_string(obj, "$", "title"),
        illustrative=_boolean(obj, "$", "illustrative", default=False),
        domains=tuple(
            _parse_domain(d, f"domains[{i}]")
            for i, d in enumerate(_array(obj, "$", "domains"))
        ),
    )


# ---------------------------------------------------------------------------
# Serialisation
# ---------------------------------------------------------------------------

def _band_to_dict(band: Band) -> dict[str, Any]:
    out: dict[str, Any] = {"points": band.points}
    if band.lower is not None:
        out["lower"] = band.lower
    if band.upper is not None:
        out["upper"] = band.upper
    return out


def _metric_to_dict(metric: Metric) -> dict[str, Any]:
    out: dict[str, Any] = {
        "metric_id": metric.metric_id,
        "description": metric.description,
        "kind": metric.kind.value,
    }
    if metric.kind is MetricKind.QUANTITATIVE:
        if metric.unit is not None:
            out["unit"] = metric.unit
        out["direction"] = metric.direction.value
        out["bands"] = [_band_to_dict(b) for b in metric.bands]
    else:
        out["rubric"] = {key: metric.rubric[i] for i, key in enumerate(RUBRIC_KEYS)}
    return out


def catalog_to_dict(catalog: Catalog) -> dict[str, Any]:
    """Project a catalog back onto its JSON document structure."""
    return {
        "catalog_id": catalog.catalog_id,
        "version": catalog.version,
        "title": catalog.title,
        "illustrative": catalog.illustrative,
        "domains": [
            {
                "domain_id": d.domain_id,
                "name": d.name,
                "kind": d.kind.value,
                "description": d.description,
                "tiers": [
                    {
                        "level": t.level.token,
                        "practices": [
                            {"practice_id": p.practice_id, "statement": p.statement}
                            for p in t.practices
                        ],
                        "metrics": [_metric_to_dict(m) for m in t.metrics],
                    }
                    for t in d.tiers
                ],
            }
            for d in catalog.domains
        ],
    }


def catalog_to_json(catalog: Catalog) -> bytes:
    return (json.dumps(catalog_to_dict(catalog), indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


# ---------------------------------------------------------------------------
# Semantic validation
# ---------------------------------------------------------------------------

class _Collector:
    def __init__(self) -> None:
        self.findings: list[Finding] = []

    def error(self, path: str, message: str) -> None:
        self.findings.append(Finding("error", path, message))

    def warning(self, path: str, message: str) -> None:
        self.findings.append(Finding("warning", path, message))


def _check_slug(collector: _Collector, path: str, value: str, what: str) -> None:
    if not SLUG_RE.match(value):
        collector.error(
            path, f"{what} {value!r} is not a slug (lowercase alphanumerics and hyphens)"
        )


def _check_bands(collector: _Collector, path: str, metric: Metric) -> None:
    bands = metric.bands
    if len(bands) != 4 or sorted(b.points for b in bands) != [0, 1, 2, 3]:
        collector.error(
            f"{path}.bands",
            "quantitative metric must have exactly four bands for points 3, 2, 1, 0",
        )
        return
    for i, band in enumerate(bands):
        if band.lower is not None and band.upper is not None and band.lower >= band.upper:
            collector.error(
                f"{path}.bands[{i}]",
                f"band lower bound {band.lower:g} is not below upper bound {band.upper:g}",
            )
            return

    ordered = sorted(bands, key=lambda b: float("-inf") if b.lower is None else b.lower)
    if ordered[0].lower is not None:
        collector.error(
            f"{path}.bands", "lowest band must be unbounded below to cover the full range"
        )
    if ordered[-1].upper is not None:
        collector.error(
            f"{path}.bands", "highest band must be unbounded above to cover the full range"
        )
    for a, b in zip(ordered, ordered[1:]):
        if a.upper is None or b.lower is None:
            collector.error(
                f"{path}.bands",
                f"bands {a.describe()} and {b.describe()} overlap (inner bounds missing)",
            )
            return
        if a.upper > b.lower:
            collector.error(
                f"{path}.bands",
                f"band for {a.points} points {a.describe()} overlaps band for "
                f"{b.points} points {b.describe()}",
            )
        elif a.upper < b.lower:
            collector.error(
                f"{path}.bands",
                f"gap between band {a.describe()} and band {b.describe()}",
            )

    expected = [0, 1, 2, 3] if metric.direction is Direction.HIGHER_IS_BETTER else [3, 2, 1, 0]
    if [b.points for b in ordered] != expected:
        collector.error(
            f"{path}.bands",
            f"band points must be ordered {expected} from the lowest interval upward "
            f"for direction {metric.direction.value}",
        )


def _check_metric(collector: _Collector, path: str, metric: Metric) -> None:
    _check_slug(collector, f"{path}.metric_id", metric.metric_id, "metric id")
    if not metric.description.strip():
        collector.warning(f"{path}.description", "metric description is empty")
    if metric.kind is MetricKind.QUANTITATIVE:
        _check_bands(collector, path, metric)
    else:
        for i, text in enumerate(metric.rubric):
            if not text.strip():
                collector.error(
                    f"{path}.rubric[{RUBRIC_KEYS[i]}]", "rubric text must be non-empty"
                )
        if len(set(metric.rubric)) != len(metric.rubric):
            collector.error(f"{path}.rubric", "rubric texts must be distinct")


def _check_domain(collector: _Collector, path: str, domain: Domain) -> None:
    _check_slug(collector, f"{path}.domain_id", domain.domain_id, "domain id")
    if not domain.name.strip():
        collector.error(f"{path}.name", "domain name must be non-empty")
    if not domain.description.strip():
        collector.warning(f"{path}.description", "domain description is empty")

    expected_levels = (TierLevel.BASIC, TierLevel.INTERMEDIATE, TierLevel.ADVANCED)
    if tuple(t.level for t in domain.tiers) != expected_levels:
        collector.error(
            f"{path}.tiers",
            "domain must have exactly three tiers ordered Basic, Intermediate, Advanced",
        )

    seen_practices: set[str] = set()
    seen_metrics: set[str] = set()
    for tier in domain.tiers:
        tier_path = f"{path}.tiers[{tier.level.label}]"
        if not tier.practices:
            collector.error(f"{tier_path}.practices", "tier must contain at least one practice")
        if not tier.metrics:
            collector.error(f"{tier_path}.metrics", "tier must contain at least one metric")
        for i, practice in enumerate(tier.practices):
            practice_path = f"{tier_path}.practices[{i}]"
            _check_slug(
                collector, f"{practice_path}.practice_id", practice.practice_id, "practice id"
            )
            if not practice.statement.strip():
                collector.error(f"{practice_path}.statement", "practice statement must be non-empty")
            if practice.practice_id in seen_practices:
                collector.error(
                    f"{practice_path}.practice_id",
                    f"duplicate practice id {practice.practice_id!r} within domain",
                )
            seen_practices.add(practice.practice_id)
        for i, metric in enumerate(tier.metrics):
            metric_path = f"{tier_path}.metrics[{i}]"
            if metric.metric_id in seen_metrics:
                collector.error(
                    f"{metric_path}.metric_id",
                    f"duplicate metric id {metric.metric_id!r} within domain",
                )
            seen_metrics.add(metric.metric_id)
            _check_metric(collector, metric_path, metric)


def validate_catalog(catalog: Catalog) -> ValidationReport:
    """Check every semantic invariant of a catalog.

    Problems are reported as findings, never raised; ``valid`` is true
    exactly when there are no error-severity findings. Findings come out
    in document order, so identical input yields identical reports.
    """
    collector = _Collector()

    _check_slug(collector, "catalog_id", catalog.catalog_id, "catalog id")
    if not catalog.version.strip():
        collector.error("version", "catalog version must be non-empty")
    if not catalog.title.strip():
        collector.warning("title", "catalog title is empty")

    seen: set[str] = set()
    for i, domain in enumerate(catalog.domains):
        if domain.domain_id in seen:
            collector.error(
                f"domains[{i}].domain_id", f"duplicate domain id {domain.domain_id!r}"
            )
        seen.add(domain.domain_id)
        _check_domain(collector, f"domains[{i}]", domain)

    if not any(d.kind is DomainKind.CORE for d in catalog.domains):
        collector.error("domains", "catalog must contain at least one core domain")

    return ValidationReport(tuple(collector.findings))


@lru_cache(maxsize=1)
def builtin_catalog() -> Catalog:
    """The catalog shipped with this package.

    Covers the seven core and fourteen elective capability domains with
    illustrative practices and metrics; content is marked illustrative and
    should be replaced or extended by organisations with their own corpus.
    """
    data = resources.files("ccmf").joinpath("data/builtin_catalog.json").read_bytes()
    return parse_catalog(data)

"""Flat-file persistence for catalogs and assessments.

Layout under the store root (``CCMF_HOME`` or ``./.ccmf`` by default):

    catalogs/<catalog_id>@<version>.json
    assessments/<assessment_id>.json

Writes are atomic (temp file then rename) so a crash mid-write leaves the
previous version intact. One logical writer per assessment id is assumed;
the HTTP service serialises its mutations accordingly.
"""

from __future__ import annotations

import json
import logging
import os
import re
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from .assessment import (
    Assessment,
    assessment_from_dict,
    assessment_to_dict,
    utc_now_rfc3339,
    validate_assessment,
)
from .catalog import Catalog, builtin_catalog, catalog_to_json, parse_catalog
from .errors import (
    CcmfError,
    CorruptDocument,
    NotFound,
    SerialisationError,
    StorageError,
)

logger = logging.getLogger(__name__)

_SAFE_NAME_RE = re.compile(r"^[A-Za-z0-9._@-]+$")


def default_root() -> Path:
    return Path(os.environ.get("CCMF_HOME", ".ccmf"))


def _safe_name(identifier: str) -> str:
    """File names derive solely from ids; anything unexpected is rejected."""
    if not identifier or not _SAFE_NAME_RE.match(identifier) or identifier.startswith("."):
        raise StorageError(f"identifier {identifier!r} is not a safe file name")
    return identifier


@dataclass(frozen=True)
class AssessmentListing:
    entries: tuple[dict[str, Any], ...]
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {"assessments": list(self.entries), "warnings": list(self.warnings)}


class Store:
    """Filesystem store rooted at a directory."""

    def __init__(self, root: Optional[Path | str] = None):
        self.root = Path(root) if root is not None else default_root()

    @property
    def catalogs_dir(self) -> Path:
        return self.root / "catalogs"

    @property
    def assessments_dir(self) -> Path:
        return self.root / "assessments"

    def _atomic_write(self, target: Path, payload: bytes) -> Path:
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(dir=target.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "wb") as handle:
                    handle.write(payload)
                os.replace(tmp_name, target)
            except BaseException:
                try:
                    os.unlink(tmp_name)
                except OSError:
                    pass
                raise
        except OSError as exc:
            raise StorageError(f"cannot write {target}: {exc}") from exc
        return target

    # -- catalogs ----------------------------------------------------------

    def catalog_path(self, catalog_id: str, version: str) -> Path:
        return self.catalogs_dir / f"{_safe_name(catalog_id)}@{_safe_name(version)}.json"

    def save_catalog(self, catalog: Catalog) -> Path:
        """Persist a catalog. Once a version exists its content is immutable."""
        target = self.catalog_path(catalog.catalog_id, catalog.version)
        payload = catalog_to_json(catalog)
        if target.exists():
            if target.read_bytes() == payload:
                return target
            raise StorageError(
                f"catalog {catalog.ref} already exists with different content; bump the version"
            )
        return self._atomic_write(target, payload)

    def load_catalog(self, catalog_id: str, version: Optional[str] = None) -> Catalog:
        """Load a stored catalog; the latest version when none is given."""
        if version is not None:
            path = self.catalog_path(catalog_id, version)
            if not path.exists():
                raise NotFound(f"catalog {catalog_id}@{version} not found in store")
            return self._parse_catalog_file(path)
        prefix = f"{_safe_name(catalog_id)}@"
        candidates = sorted(self.catalogs_dir.glob(f"{prefix}*.json")) if self.catalogs_dir.is_dir() else []
        if not candidates:
            raise NotFound(f"catalog {catalog_id!r} not found in store")
        return self._parse_catalog_file(candidates[-1])

    def _parse_catalog_file(self, path: Path) -> Catalog:
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise StorageError(f"cannot read {path}: {exc}") from exc
        try:
            return parse_catalog(data)
        except CcmfError as exc:
            raise CorruptDocument(f"catalog file {path} is corrupt: {exc}") from exc

    def get_catalog(self, catalog_id: str, version: Optional[str] = None) -> Catalog:
        """Resolve a catalog: the built-in one, or a stored one."""
        builtin = builtin_catalog()
        if catalog_id == builtin.catalog_id and version in (None, builtin.version):
            return builtin
        return self.load_catalog(catalog_id, version)

    def get_catalog_by_ref(self, ref: str) -> Catalog:
        """Resolve ``<id>`` or ``<id>@<version>``."""
        if "@" in ref:
            catalog_id, _, version = ref.partition("@")
            return self.get_catalog(catalog_id, version)
        return self.get_catalog(ref)

    def list_catalogs(self) -> list[dict[str, Any]]:
        builtin = builtin_catalog()
        entries = [
            {
                "catalog_id": builtin.catalog_id,
                "version": builtin.version,
                "title": builtin.title,
                "illustrative": builtin.illustrative,
                "builtin": True,
                "core_domains": len(builtin.core_domains()),
                "elective_domains": len(builtin.elective_domains()),
            }
        ]
        if self.catalogs_dir.is_dir():
            for path in sorted(self.catalogs_dir.glob("*.json")):
                try:
                    catalog = self._parse_catalog_file(path)
                except CcmfError:
                    logger.warning("skipping corrupt catalog file %s", path)
                    continue
                if catalog.catalog_id == builtin.catalog_id and catalog.version == builtin.version:
                    continue
                entries.append(
                    {
                        "catalog_id": catalog.catalog_id,
                        "version": catalog.version,
                        "title": catalog.title,
                        "illustrative": catalog.illustrative,
                        "builtin": False,
                        "core_domains": len(catalog.core_domains()),
                        "elective_domains": len(catalog.elective_domains()),
                    }
                )
        return entries

    # -- assessments ---------------------------------------------------------

    def assessment_path(self, assessment_id: str) -> Path:
        return self.assessments_dir / f"{_safe_name(assessment_id)}.json"

    def save_assessment(self, assessment: Assessment) -> Path:
        """Atomically persist an assessment, refreshing its updated stamp."""
        assessment.updated = utc_now_rfc3339()
        assessment.entity_version += 1
        try:
            payload = (
                json.dumps(assessment_to_dict(assessment), indent=2, ensure_ascii=False) + "\n"
            ).encode("utf-8")
        except (TypeError, ValueError) as exc:
            raise SerialisationError(f"assessment cannot be serialised: {exc}") from exc
        return self._atomic_write(self.assessment_path(assessment.assessment_id), payload)

    def load_assessment(self, assessment_id: str) -> Assessment:
        """Load and invariant-check an assessment against its pinned catalog."""
        path = self.assessment_path(assessment_id)
        if not path.exists():
            raise NotFound(f"assessment {assessment_id!r} not found")
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise StorageError(f"cannot read {path}: {exc}") from exc
        try:
            raw = json.loads(data)
        except json.JSONDecodeError as exc:
            raise CorruptDocument(f"assessment file {path} is not valid JSON: {exc}") from exc
        assessment = assessment_from_dict(raw)
        catalog = self.get_catalog(assessment.catalog_id, assessment.catalog_version)
        problems = validate_assessment(assessment, catalog)
        if problems:
            raise CorruptDocument(
                f"assessment file {path} violates invariants: {'; '.join(problems)}",
                details=problems,
            )
        return assessment

    def delete_assessment(self, assessment_id: str) -> None:
        path = self.assessment_path(assessment_id)
        if not path.exists():
            raise NotFound(f"assessment {assessment_id!r} not found")
        try:
            path.unlink()
        except OSError as exc:
            raise StorageError(f"cannot delete {path}: {exc}") from exc

    def list_assessments(self) -> AssessmentListing:
        """Summaries sorted newest-updated first; corrupt files become warnings."""
        entries: list[dict[str, Any]] = []
        warnings: list[str] = []
        if self.assessments_dir.is_dir():
            try:
                paths = sorted(self.assessments_dir.glob("*.json"))
            except OSError as exc:
                raise StorageError(f"cannot list {self.assessments_dir}: {exc}") from exc
            for path in paths:
                try:
                    raw = json.loads(path.read_bytes())
                    entries.append(
                        {
                            "assessment_id": raw["assessment_id"],
                            "organisation": raw["organisation"],
                            "updated": raw["updated"],
                        }
                    )
                except (OSError, ValueError, KeyError, TypeError) as exc:
                    warnings.append(f"{path.name}: {exc}")
        entries.sort(key=lambda e: e["updated"], reverse=True)
        return AssessmentListing(tuple(entries), tuple(warnings))

"""Exception hierarchy for the assessment engine.

Every domain error carries a stable ``code`` string (used by the HTTP
service to build problem documents and by the CLI for exit handling)
and an optional ``details`` payload with machine-readable context.
"""

from __future__ import annotations

from typing import Any


class CcmfError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "Error"

    def __init__(self, message: str, details: Any = None):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# --- catalog parsing / validation -----------------------------------------

class CatalogSyntaxError(CcmfError):
    """The catalog document is not well-formed (bad JSON, duplicate keys)."""

    code = "SyntaxError"


class ShapeError(CcmfError):
    """The document parses but a field is missing, unknown, or mistyped."""

    code = "ShapeError"


# --- assessment workflow ----------------------------------------------------

class UnknownDomain(CcmfError):
    code = "UnknownDomain"


class NotElective(CcmfError):
    """A core domain id was passed where an elective id is required."""

    code = "NotElective"


class DuplicateElective(CcmfError):
    code = "DuplicateElective"


class DomainNotSelected(CcmfError):
    code = "DomainNotSelected"


class UnknownPractice(CcmfError):
    code = "UnknownPractice"


class UnknownMetric(CcmfError):
    code = "UnknownMetric"


class WrongKind(CcmfError):
    """Quantitative operation on a qualitative metric, or vice versa."""

    code = "WrongKind"


class OutOfScope(CcmfError):
    """The practice/metric belongs to a tier above the domain's target tier."""

    code = "OutOfScope"


class InvalidPoints(CcmfError):
    code = "InvalidPoints"


class CatalogMismatch(CcmfError):
    """The assessment pins a different catalog id/version."""

    code = "CatalogMismatch"


# --- scoring ----------------------------------------------------------------

class MissingRatings(CcmfError):
    code = "MissingRatings"


class MissingEvaluations(CcmfError):
    code = "MissingEvaluations"


class Incomplete(CcmfError):
    """Strict-mode scoring refused: details lists every missing item."""

    code = "Incomplete"


class MissingDomain(CcmfError):
    code = "MissingDomain"


class ExtraDomain(CcmfError):
    code = "ExtraDomain"


class FactorOutOfRange(CcmfError):
    code = "FactorOutOfRange"


class WeightSumInvalid(CcmfError):
    code = "WeightSumInvalid"


class OutOfRange(CcmfError):
    code = "OutOfRange"


# --- reporting ----------------------------------------------------------------

class ReportMismatch(CcmfError):
    """The score report was not produced from the given assessment/catalog."""

    code = "ReportMismatch"


class UnsupportedFormat(CcmfError):
    code = "UnsupportedFormat"


# --- store --------------------------------------------------------------------

class StorageError(CcmfError):
    """Filesystem failure while reading or writing the store."""

    code = "IoError"


class SerialisationError(CcmfError):
    code = "SerialisationError"


class NotFound(CcmfError):
    code = "NotFound"


class FormatVersionUnsupported(CcmfError):
    code = "FormatVersionUnsupported"


class CorruptDocument(CcmfError):
    code = "CorruptDocument"


# --- service -------------------------------------------------------------------

class VersionConflict(CcmfError):
    """Optimistic-concurrency check failed (stale entity version)."""

    code = "VersionConflict"

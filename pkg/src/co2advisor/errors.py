"""Domain error types shared across the pipeline, decision engine and service.

Every error carries enough structure (stage, column, row) to be surfaced
verbatim through the CLI and the HTTP API.
"""

from __future__ import annotations


class AdvisorError(Exception):
    """Base class for all domain errors."""

    code = "AdvisorError"

    def __init__(self, message: str, *, stage: str | None = None,
                 column: str | None = None, row: int | None = None):
        super().__init__(message)
        self.message = message
        self.stage = stage
        self.column = column
        self.row = row

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.stage is not None:
            out["stage"] = self.stage
        if self.column is not None:
            out["column"] = self.column
        if self.row is not None:
            out["row"] = self.row
        return out


class HeaderMismatch(AdvisorError):
    code = "HeaderMismatch"


class CellParseError(AdvisorError):
    code = "CellParseError"


class ArityError(AdvisorError):
    code = "ArityError"


class MissingColumn(AdvisorError):
    code = "MissingColumn"


class EmptyResult(AdvisorError):
    code = "EmptyResult"


class TooFewRows(AdvisorError):
    code = "TooFewRows"


class UnknownCategory(AdvisorError):
    code = "UnknownCategory"


class DimensionMismatch(AdvisorError):
    code = "DimensionMismatch"


class EmptyTrainingSet(AdvisorError):
    code = "EmptyTrainingSet"


class NonFiniteLoss(AdvisorError):
    code = "NonFiniteLoss"

    def __init__(self, message: str, *, cycle: int, **kw):
        super().__init__(message, **kw)
        self.cycle = cycle

    def to_dict(self) -> dict:
        out = super().to_dict()
        out["cycle"] = self.cycle
        return out


class DegenerateTargets(AdvisorError):
    code = "DegenerateTargets"


class EmptyTestSet(AdvisorError):
    code = "EmptyTestSet"


class UnknownColumn(AdvisorError):
    code = "UnknownColumn"


class ObjectTypeMismatch(AdvisorError):
    code = "ObjectTypeMismatch"


class NoCandidates(AdvisorError):
    code = "NoCandidates"


class NonNumericParameter(AdvisorError):
    code = "NonNumericParameter"


class BadRange(AdvisorError):
    code = "BadRange"

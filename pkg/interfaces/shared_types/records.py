"""Output record emitted by the command-line front end."""

from __future__ import annotations

import re
from typing import Literal

from pydantic import BaseModel, ConfigDict, field_validator

_DECIMAL = re.compile(r"^-?\d+(\.\d+)?$")

RecordKind = Literal["constant", "table_row", "check"]
CheckStatus = Literal["pass", "fail", "report"]

RECORD_FIELDS: tuple[str, ...] = ("kind", "name", "k", "value", "err_bound", "status")


class OutputRecord(BaseModel):
    """One machine-readable result line.

    Numeric payloads are decimal strings already rounded to the requested
    display precision, so CSV and JSON carry identical text.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: RecordKind
    name: str
    k: int | None = None
    value: str
    err_bound: str = ""
    status: CheckStatus | None = None

    @field_validator("value", "err_bound")
    @classmethod
    def _decimal_text(cls, text: str) -> str:
        if text and not _DECIMAL.match(text):
            raise ValueError(f"not a decimal string: {text!r}")
        return text

    def as_row(self) -> dict[str, str]:
        """Flatten to CSV cells (missing optionals become empty strings)."""
        data = self.model_dump()
        return {
            name: "" if data[name] is None else str(data[name])
            for name in RECORD_FIELDS
        }


__all__ = ["CheckStatus", "OutputRecord", "RECORD_FIELDS", "RecordKind"]

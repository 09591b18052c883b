"""Text, CSV and JSON renderers for command results."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from typing import Any

from infrastructure.configuration import Settings
from interfaces.shared_types.numeric_context import round_for_display
from interfaces.shared_types.records import RECORD_FIELDS, OutputRecord, RecordKind
from interfaces.shared_types.results import EvalResult, RootResult
from interfaces.shared_types.table import TABLE_COLUMNS, SuiteOutcome, TableRow
from translated import __version__

TABLE_HEADER: tuple[str, ...] = ("k", *TABLE_COLUMNS)


def _fmt(x: Any, places: int) -> str:
    return round_for_display(x, places)


def _bound(x: Any, places: int) -> str:
    return "" if x is None else _fmt(abs(x), places)


def constant_record(
    name: str,
    result: EvalResult,
    settings: Settings,
    *,
    k: int | None = None,
) -> OutputRecord:
    places = settings.display_digits
    return OutputRecord(
        kind="constant",
        name=name,
        k=k,
        value=_fmt(result.value, places),
        err_bound=_bound(result.err_bound, places),
    )


def root_record(name: str, result: RootResult, settings: Settings) -> OutputRecord:
    places = settings.display_digits
    return OutputRecord(
        kind="constant",
        name=name,
        k=result.k,
        value=_fmt(result.root, places),
        err_bound=_bound(result.residual, places),
    )


def table_records(rows: Iterable[TableRow], settings: Settings) -> list[OutputRecord]:
    """One record per cell, ordered by ``k`` then column."""

    kind: RecordKind = "table_row"
    records = []
    for row in sorted(rows, key=lambda r: r.k):
        for column, cell in zip(TABLE_COLUMNS, row.cells(), strict=True):
            records.append(
                OutputRecord(
                    kind=kind,
                    name=column,
                    k=row.k,
                    value=_fmt(cell, settings.display_digits),
                )
            )
    return records


def suite_records(outcome: SuiteOutcome, settings: Settings) -> list[OutputRecord]:
    places = settings.display_digits
    return [
        OutputRecord(
            kind="check",
            name=check.name,
            k=check.k,
            value=_fmt(check.value, places),
            err_bound=_bound(check.err_bound, places),
            status=check.status,
        )
        for check in outcome.checks
    ]


def json_document(records: Sequence[OutputRecord], settings: Settings) -> str:
    document = {
        "meta": {
            "precision": settings.precision,
            "display_digits": settings.display_digits,
            "version": __version__,
        },
        "records": [record.model_dump() for record in records],
    }
    return json.dumps(document, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def render_table(rows: Sequence[TableRow], settings: Settings) -> str:
    """Render the constants table in the requested format."""

    records = table_records(rows, settings)
    if settings.output_format == "json":
        return json_document(records, settings)
    cells: dict[int, list[str]] = {}
    for record in records:
        if record.k is None:
            continue
        cells.setdefault(record.k, [str(record.k)]).append(record.value)
    lines = [cells[k] for k in sorted(cells)]
    if settings.output_format == "csv":
        return _csv(TABLE_HEADER, lines)
    width = max([len(h) for h in TABLE_HEADER] + [len(c) for r in lines for c in r])
    out = ["  ".join(h.rjust(width) for h in TABLE_HEADER)]
    out += ["  ".join(c.rjust(width) for c in line) for line in lines]
    return "\n".join(out) + "\n"


def _text_line(record: OutputRecord) -> str:
    label = record.name if record.k is None else f"{record.name} [k={record.k}]"
    line = f"{label}: {record.value}"
    if record.err_bound:
        line += f" +/- {record.err_bound}"
    if record.status is not None:
        line += f"  {record.status.upper()}"
    return line


def render_records(records: Sequence[OutputRecord], settings: Settings) -> str:
    """Render constant or check records in the requested format."""

    if settings.output_format == "json":
        return json_document(records, settings)
    if settings.output_format == "csv":
        rows = ([r.as_row()[f] for f in RECORD_FIELDS] for r in records)
        return _csv(RECORD_FIELDS, rows)
    return "".join(_text_line(record) + "\n" for record in records)


def suite_summary(outcome: SuiteOutcome) -> str:
    verdict = "ok" if outcome.ok else "FAILED"
    return (
        f"{outcome.suite}: {verdict} ({outcome.count('pass')} pass, "
        f"{outcome.count('fail')} fail, {outcome.count('report')} report)\n"
    )


__all__ = [
    "TABLE_HEADER",
    "constant_record",
    "json_document",
    "render_records",
    "render_table",
    "root_record",
    "suite_records",
    "suite_summary",
    "table_records",
]

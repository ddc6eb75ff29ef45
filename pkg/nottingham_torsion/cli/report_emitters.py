"""
Rendering of command results as text, JSON or CSV.

Every subcommand first builds a plain payload dict; `emit` renders it. Characters
appear as "index:value" pairs and group elements in product form, so a JSON
report can be parsed back with the literal parsers.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Iterable

from nottingham_torsion.characters import Character, format_character_pairs
from nottingham_torsion.equivalence import ClassReport
from nottingham_torsion.reduction import Witness
from nottingham_torsion.utils.util import validate_str_value
from .cli_schema import OutputFormat
from .verification import CheckResult

TABLE_COLUMNS = ("p", "l", "m", "valid", "B", "d", "method", "runtime_ms")
CLASS_COLUMNS = ("p", "l", "m", "B", "d", "method", "runtime_ms")


def witness_payload(witness: Witness) -> dict[str, Any]:
    return {"u": str(witness.u), "kernel_value": witness.kernel_value, "precision": witness.u.precision}


def class_report_payload(report: ClassReport) -> dict[str, Any]:
    return {
        "kind": "classify",
        "p": report.p, "l": report.l, "m": report.m,
        "B": report.bound,
        "d": report.class_count,
        "method": report.method.value,
        "search_space_size": report.search_space_size,
        "visited": report.visited,
        "runtime_ms": round(report.runtime_ms, 3),
        "classes": [{
            "representative": format_character_pairs(c.representative),
            "members": [format_character_pairs(f.to_character()) for f in c.members],
            "witnesses": [{"source": format_character_pairs(w.source),
                           "target": format_character_pairs(w.target),
                           **witness_payload(w.witness)} for w in c.witnesses],
        } for c in report.classes],
    }


def check_payload(results: Iterable[CheckResult]) -> dict[str, Any]:
    results = list(results)
    return {
        "kind": "verify",
        "passed": all(r.passed for r in results),
        "checks": [{"name": r.name, "status": r.status.value, "detail": r.detail,
                    "runtime_ms": round(r.runtime_ms, 3)} for r in results],
    }


def _csv(columns: Iterable[str], rows: Iterable[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue().rstrip("\n")


def _text_value(value: Any) -> str:
    if isinstance(value, Character):
        return format_character_pairs(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _text(payload: dict[str, Any]) -> str:
    kind = payload["kind"]
    if kind == "classify":
        lines = [f"type <{payload['l']},{payload['m']}> at p={payload['p']}: {payload['d']} classes "
                 f"(B = {payload['B']}, method {payload['method']}, {payload['visited']} nodes visited)"]
        for i, c in enumerate(payload["classes"], start=1):
            lines.append(f"  class {i}: representative {c['representative']}, {len(c['members'])} reduced form(s)")
            for w in c["witnesses"]:
                lines.append(f"    {w['source']} ~ {w['target']} via u = {w['u']}")
        return "\n".join(lines)
    if kind == "tables":
        return "\n".join([" ".join(TABLE_COLUMNS)] +
                         [" ".join(str(row[c]) for c in TABLE_COLUMNS) for row in payload["rows"]])
    if kind == "verify":
        lines = [f"[{c['status']}] {c['name']}: {c['detail']} ({c['runtime_ms']:.0f} ms)" for c in payload["checks"]]
        lines.append("all checks passed" if payload["passed"] else "verification FAILED")
        return "\n".join(lines)
    return "\n".join(f"{key}: {_text_value(value)}" for key, value in payload.items() if key != "kind")


def emit(payload: dict[str, Any], output_format: OutputFormat | str) -> str:
    """
    Render a command payload.

    Args:
        payload (dict): A payload built by the cli module; "kind" names the subcommand.
        output_format (Union[OutputFormat, str]): text, json or csv.

    Returns:
        str: The rendered report, without a trailing newline.

    Raises:
        ValueError: If the format is unknown.
    """
    output_format = validate_str_value(OutputFormat, output_format)
    if output_format is OutputFormat.JSON:
        return json.dumps(payload, indent=2, default=_text_value)
    if output_format is OutputFormat.CSV:
        kind = payload["kind"]
        if kind == "tables":
            return _csv(TABLE_COLUMNS, payload["rows"])
        if kind == "classify":
            return _csv(CLASS_COLUMNS, [payload])
        if kind == "verify":
            return _csv(("name", "status", "detail", "runtime_ms"), payload["checks"])
        flat = {k: _text_value(v) for k, v in payload.items() if k != "kind" and not isinstance(v, (dict, list))}
        return _csv(flat.keys(), [flat])
    return _text(payload)

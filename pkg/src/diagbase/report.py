"""Machine-readable report envelopes: JSON, CSV, and plain text.

Every report carries the schema version and a full echo of the resolved
configuration.  Rationals are serialized as numerator/denominator string
pairs so nothing is rounded.  Wall-clock timing is an opt-in field (null by
default) so that repeated runs with identical configuration produce
byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from importlib import resources

SCHEMA_VERSION = "1.0"


def encode_value(value):
    """Recursively convert payload values into JSON-encodable structures."""
    if isinstance(value, Fraction):
        return {"num": str(value.numerator), "den": str(value.denominator)}
    if isinstance(value, dict):
        return {k: encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_value(v) for v in value]
    if hasattr(value, "describe"):
        return encode_value(value.describe())
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (int, float, str)):
        return value
    return str(value)


def make_report(command: str, config: dict, payload,
                timing_seconds: float | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": encode_value(config),
        "payload": encode_value(payload),
        "timing_seconds": timing_seconds,
    }


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _flatten(prefix, value, row):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, row)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, row)
    else:
        row[prefix] = value


def to_csv(report: dict) -> str:
    """One row per payload entry when the payload is a list of records
    (sweep shape); a single flattened row otherwise."""
    payload = report["payload"]
    rows = payload if isinstance(payload, list) else [payload]
    flats = []
    for entry in rows:
        flat = {}
        _flatten("", entry, flat)
        flats.append(flat)
    fieldnames = sorted({k for flat in flats for k in flat})
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames)
    writer.writeheader()
    for flat in flats:
        writer.writerow(flat)
    return buf.getvalue()


def to_text(report: dict) -> str:
    lines = [f"# {report['command']} (schema {report['schema_version']})"]
    if report.get("timing_seconds") is not None:
        lines.append(f"# timing: {report['timing_seconds']:.3f}s")
    flat = {}
    _flatten("", report["payload"], flat)
    width = max((len(k) for k in flat), default=0)
    for k in sorted(flat):
        lines.append(f"{k.ljust(width)}  {flat[k]}")
    return "\n".join(lines) + "\n"


FORMATTERS = {"json": to_json, "csv": to_csv, "text": to_text}


def render(report: dict, fmt: str) -> str:
    if fmt not in FORMATTERS:
        raise ValueError(f"unknown report format {fmt!r}")
    return FORMATTERS[fmt](report)


def schema() -> dict:
    """The shipped JSON schema for report envelopes."""
    text = resources.files("diagbase").joinpath(
        "data/report-schema.json").read_text(encoding="utf-8")
    return json.loads(text)

"""JSON analysis reports.

A report is a mapping {"schema": "toric-crn/1", "results": {...}}. Rationals are
written as "p/q" strings (or "p" when integral) so that no value is ever
rounded; integers stay JSON numbers. Keys inside "results" are sorted, so equal
reports render to identical text.

Typical usage example:
    report = AnalysisReport({"partition": [[1, 2], [3]]})
    text = render_report(report)
    assert load_report(text) == report
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum
from fractions import Fraction
from typing import Any

from ..core.constants import SCHEMA_VERSION
from ..core.errors import CRNError
from ..linalg.exact import IntegerMatrix, RationalMatrix

@dataclasses.dataclass
class AnalysisReport:
    """
    Structured results of one analysis, ready for JSON.

    Attributes:
        results (dict[str, Any]): JSON-ready values keyed by result name.
        schema (str): Report schema version.
    """
    results: dict[str, Any] = dataclasses.field(default_factory=dict)
    schema: str = SCHEMA_VERSION

    def __getitem__(self, key: str) -> Any:
        return self.results[key]

    def __contains__(self, key: str) -> bool:
        return key in self.results

    def add(self, key: str, value: Any) -> None:
        """Store `value` under `key`, converting it to its JSON form."""
        self.results[key] = to_json_value(value)

def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"

def parse_rational(text: str) -> Fraction:
    """Inverse of `format_rational`."""
    return Fraction(text)

def to_json_value(value: Any) -> Any:
    """
    Convert analysis objects to plain JSON values.

    Fractions become "p/q" strings, matrices become nested lists, enums their
    value, and objects with a `to_json` method are asked for their own form.
    """
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return value
    if isinstance(value, IntegerMatrix):
        return value.to_lists()
    if isinstance(value, RationalMatrix):
        return [[format_rational(v) for v in row] for row in value.rows]
    if hasattr(value, "to_json"):
        return to_json_value(value.to_json())
    if isinstance(value, dict):
        return {str(k): to_json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_json_value(v) for v in items]
    if hasattr(value, "item"):    # numpy scalar
        return to_json_value(value.item())
    raise TypeError(f"Cannot convert {type(value).__name__} to a report value")

def _sorted_keys(value: Any) -> Any:
    if isinstance(value, dict):
        return {k: _sorted_keys(value[k]) for k in sorted(value)}
    if isinstance(value, list):
        return [_sorted_keys(v) for v in value]
    return value

def render_report(report: AnalysisReport, indent: int | None = None) -> str:
    """
    Render a report as JSON text.

    The top level is always schema then results; nested keys are sorted.
    Without `indent` the output is compact.
    """
    document = {"schema": report.schema, "results": _sorted_keys(to_json_value(report.results))}
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(document, separators=separators, indent=indent, ensure_ascii=False, allow_nan=False)

def load_report(text: str) -> AnalysisReport:
    """
    Read a report rendered by `render_report`.

    Raises:
        CRNError: If the text is not a report of the supported schema.
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise CRNError(f"Report is not valid JSON: {e}") from e
    if not isinstance(document, dict) or set(document) != {"schema", "results"}:
        raise CRNError("Report must be an object with exactly the keys 'schema' and 'results'")
    if document["schema"] != SCHEMA_VERSION:
        raise CRNError(f"Unsupported report schema '{document['schema']}', expected '{SCHEMA_VERSION}'")
    if not isinstance(document["results"], dict):
        raise CRNError("Report 'results' must be an object")
    return AnalysisReport(results=document["results"], schema=document["schema"])

def render_plain(report: AnalysisReport) -> str:
    """Human readable rendering: one "path: value" line per leaf."""
    lines: list[str] = []

    def walk(prefix: str, value: Any) -> None:
        if isinstance(value, dict) and value:
            for key in sorted(value):
                walk(f"{prefix}.{key}" if prefix else key, value[key])
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            for i, item in enumerate(value, start=1):
                walk(f"{prefix}[{i}]", item)
        else:
            lines.append(f"{prefix}: {json.dumps(value, separators=(',', ':'), ensure_ascii=False)}")

    walk("", to_json_value(report.results))
    return "\n".join(lines)

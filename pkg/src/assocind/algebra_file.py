"""Reading and writing algebra description files (JSON).

Two shapes are accepted::

    {"builder": "mat", "n": 2}
    {"dim": 1, "table": [[["1"]]], "name": "field", "unit": ["1"]}

Coefficients are strings ``"p/q"`` or ``"n"`` (plain JSON integers are also
accepted).
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .algebra import (
    AlgebraError,
    AssociativityError,
    StructureConstants,
    build_named,
    check_associative,
)
from .scalars.fields import DomainError

_TABLE_KEYS = {"dim", "table", "name", "unit", "labels"}


class AlgebraFileError(ValueError):
    """Malformed algebra file; ``line``/``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line, self.column = line, column


def _locate(text: str, needle: str):
    """Line and column of the first occurrence of ``needle``, for error messages only."""
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def parse_algebra_file(text: str) -> StructureConstants:
    """Parse and validate; raises ``AlgebraFileError`` or ``AssociativityError``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be a JSON object", 1, 1)
    if "builder" in doc:
        try:
            return build_named(doc)
        except AssociativityError:
            raise
        except (AlgebraError, ValueError, TypeError) as exc:
            raise AlgebraFileError(str(exc), *_locate(text, '"builder"')) from None
    missing = {"dim", "table"} - set(doc)
    if missing:
        raise AlgebraFileError(f"missing keys {sorted(missing)}", 1, 1)
    extra = set(doc) - _TABLE_KEYS
    if extra:
        raise AlgebraFileError(f"unknown keys {sorted(extra)}", *_locate(text, f'"{sorted(extra)[0]}"'))
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise AlgebraFileError("dim must be a positive integer", *_locate(text, '"dim"'))
    table = doc["table"]
    if not isinstance(table, list) or len(table) != dim:
        raise AlgebraFileError(f"table must have {dim} rows", *_locate(text, '"table"'))
    try:
        sc = StructureConstants(table, name=doc.get("name"), unit=doc.get("unit"),
                                labels=doc.get("labels"))
    except (AlgebraError, DomainError, TypeError) as exc:
        raise AlgebraFileError(f"bad table: {exc}", *_locate(text, '"table"')) from None
    return check_associative(sc)


def load_algebra(path) -> tuple[StructureConstants, str]:
    """Parsed algebra and the sha256 of the file bytes."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise AlgebraFileError(f"{path}: not UTF-8 ({exc.reason})") from None
    return parse_algebra_file(text), hashlib.sha256(data).hexdigest()


def serialize_algebra(sc: StructureConstants) -> str:
    """Materialized table form; ``parse_algebra_file`` inverts it."""
    return json.dumps(sc.to_json(), indent=1, sort_keys=True) + "\n"


__all__ = ["AlgebraFileError", "parse_algebra_file", "load_algebra", "serialize_algebra"]

"""JSON algebra files.

Layout::

    {"arity": n, "dim": d, "field": "Q" | "GF(p)",
     "brackets": [{"args": [i1, ..., in], "value": {"k": "scalar", ...}}, ...]}

Indices are 1-based, ``args`` strictly increasing, omitted coordinates zero.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction

from .algebra import NLieAlgebra
from .linalg import Field

ENV_FIELD = "NLIE_DEFAULT_FIELD"


class ParseError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.path = path
        self.line = line
        where = path or "document"
        if line is not None:
            where += f" (line {line})"
        super().__init__(f"{where}: {message}")


def _reject_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ParseError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _line_of_entry(text: str, idx: int) -> int | None:
    hits = [m.start() for m in re.finditer(r'"args"', text)]
    if idx < len(hits):
        return text.count("\n", 0, hits[idx]) + 1
    return None


def _line_of_key(text: str, key: str) -> int | None:
    m = re.search(r'"%s"' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _integral_scalar(raw) -> bool:
    if _is_int(raw):
        return True
    try:
        return Fraction(str(raw).strip()).denominator == 1
    except (ValueError, ZeroDivisionError):
        return False


def loads(text: str, field: str | Field | None = None) -> NLieAlgebra:
    """Parse an algebra document.

    ``field`` reinterprets the coefficients in another field; this is only
    allowed when every coefficient is an integer.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, "", e.lineno) from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    for key in ("arity", "dim", "brackets"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    extra = set(doc) - {"arity", "dim", "field", "brackets"}
    if extra:
        raise ParseError(f"unknown field(s) {sorted(extra)}")
    n, d = doc["arity"], doc["dim"]
    if not _is_int(n) or n < 1:
        raise ParseError("must be a positive integer", "arity", _line_of_key(text, "arity"))
    if not _is_int(d) or d < 0:
        raise ParseError("must be a non-negative integer", "dim", _line_of_key(text, "dim"))
    declared = doc.get("field", os.environ.get(ENV_FIELD))
    if declared is None:
        raise ParseError(f"missing field 'field' and {ENV_FIELD} is unset")
    try:
        F0 = declared if isinstance(declared, Field) else Field.parse(str(declared))
    except ValueError as e:
        raise ParseError(str(e), "field", _line_of_key(text, "field")) from None
    F = F0
    if field is not None:
        F = field if isinstance(field, Field) else Field.parse(str(field))
    entries = doc["brackets"]
    if not isinstance(entries, list):
        raise ParseError("must be a list", "brackets", _line_of_key(text, "brackets"))
    table: dict = {}
    for i, ent in enumerate(entries):
        path = f"brackets[{i}]"
        line = _line_of_entry(text, i)
        if not isinstance(ent, dict) or set(ent) != {"args", "value"}:
            raise ParseError("entry must have exactly 'args' and 'value'", path, line)
        args = ent["args"]
        if not isinstance(args, list) or not all(_is_int(x) for x in args):
            raise ParseError("must be a list of integers", path + ".args", line)
        if len(args) != n:
            raise ParseError(f"expected {n} indices, got {len(args)}", path + ".args", line)
        if any(x < 1 or x > d for x in args):
            raise ParseError(f"indices must lie in 1..{d}", path + ".args", line)
        if any(args[j] >= args[j + 1] for j in range(n - 1)):
            raise ParseError("indices must be strictly increasing", path + ".args", line)
        key = tuple(args)
        if key in table:
            raise ParseError(f"duplicate args {args}", path + ".args", line)
        val = ent["value"]
        if not isinstance(val, dict):
            raise ParseError("must be an object", path + ".value", line)
        coords = {}
        for k, raw in val.items():
            vpath = f"{path}.value[{k!r}]"
            if not re.fullmatch(r"[1-9][0-9]*", k) or int(k) > d:
                raise ParseError(f"coordinate must be an integer in 1..{d}", vpath, line)
            if F != F0 and not _integral_scalar(raw):
                raise ParseError(f"cannot reinterpret non-integral coefficient in {F}", vpath, line)
            try:
                x = F.parse_scalar(str(raw))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad scalar {raw!r}: {e}", vpath, line) from None
            coords[int(k)] = x
        table[key] = coords
    return NLieAlgebra.from_table(n, d, F, table)


def load(path: str, field: str | Field | None = None) -> NLieAlgebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), field)


def dumps(a: NLieAlgebra) -> str:
    """Canonical serialization: entries sorted by args, coordinates ascending."""
    F = a.field
    lines = [
        "{",
        f'  "arity": {a.n},',
        f'  "dim": {a.d},',
        f'  "field": {json.dumps(str(F))},',
    ]
    entries = []
    for key, coords in sorted(a.table().items()):
        val = {str(k): F.format_scalar(x) for k, x in sorted(coords.items())}
        entries.append("    " + json.dumps({"args": list(key), "value": val}))
    if entries:
        lines.append('  "brackets": [')
        lines.append(",\n".join(entries))
        lines.append("  ]")
    else:
        lines.append('  "brackets": []')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(a: NLieAlgebra, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(a))


def matrix_to_json(F: Field, P) -> list:
    return [[F.format_scalar(x) for x in row] for row in P]

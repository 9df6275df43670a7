"""Deterministic artifact emission.

Every file starts with the resolved run configuration so a result can
be reproduced from the artifact alone, and all numbers are written with
17 significant digits so float64 values round-trip exactly (regression
tests compare bytes).  CSV carries the configuration as '#' comment
lines; JSON cannot hold comments, so there it becomes a "config" object
next to the payload.
"""

from __future__ import annotations

import math
import os
from typing import Any, Iterable, Mapping

import numpy as np

from . import __version__

ARTIFACT = f"fermi-landauer/{__version__}"


def fmt_number(x: Any) -> str:
    """17-significant-digit text for floats; plain text for ints/strings."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    return str(x)


def _header_lines(config: Mapping[str, Any]) -> list[str]:
    lines = [f"# {ARTIFACT}"]
    for key in sorted(config):
        lines.append(f"# config: {key}={fmt_number(config[key])}")
    return lines


def render_csv(
    columns: list[str], rows: Iterable[Iterable[Any]], config: Mapping[str, Any]
) -> str:
    lines = _header_lines(config)
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(fmt_number(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_value(obj: Any, indent: int) -> str:
    pad = "  " * indent
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isnan(v) or math.isinf(v):
            return "null"  # JSON has no nan/inf
        return f"{v:.17g}"
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(obj, (list, tuple, np.ndarray)):
        items = [_json_value(v, indent + 1) for v in obj]
        if not items:
            return "[]"
        inner = ",\n".join("  " * (indent + 1) + it for it in items)
        return "[\n" + inner + "\n" + pad + "]"
    if isinstance(obj, Mapping):
        items = [
            "  " * (indent + 1) + f'"{k}": ' + _json_value(v, indent + 1)
            for k, v in obj.items()
        ]
        if not items:
            return "{}"
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj)!r}")


def render_json(payload: Mapping[str, Any], config: Mapping[str, Any]) -> str:
    doc = {
        "artifact": ARTIFACT,
        "config": {k: config[k] for k in sorted(config)},
        **payload,
    }
    return _json_value(doc, 0) + "\n"


def rows_as_json(
    columns: list[str], rows: Iterable[Iterable[Any]], config: Mapping[str, Any]
) -> str:
    payload = {"columns": columns, "rows": [list(r) for r in rows]}
    return render_json(payload, config)


def write_text(path: str, text: str) -> str:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(text)
    return path

"""CSV / JSON emitters and the matching CSV reader.

CSV files carry ``#``-prefixed ``key=value`` metadata lines, then a header
row, then rows of floats written with ``repr`` (shortest round-trip form).
"""
from __future__ import annotations

import json
import math

import numpy as np


def _fmt(x: float) -> str:
    return repr(float(x))


def _meta_value(v) -> str:
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def format_csv(columns: dict[str, np.ndarray], meta: dict | None = None) -> str:
    names = list(columns)
    data = [np.asarray(columns[n], dtype=float) for n in names]
    lines = [f"# {k}={_meta_value(v)}" for k, v in (meta or {}).items()]
    lines.append(",".join(names))
    for row in zip(*data):
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[dict[str, np.ndarray], dict[str, str]]:
    """Inverse of :func:`format_csv`; metadata values come back as strings."""
    meta: dict[str, str] = {}
    header = None
    rows: list[list[float]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        if header is None:
            header = line.split(",")
            continue
        rows.append([float(tok) for tok in line.split(",")])
    if header is None:
        raise ValueError("CSV has no header row")
    table = np.array(rows, dtype=float).reshape(len(rows), len(header))
    return {name: table[:, k] for k, name in enumerate(header)}, meta


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (np.floating, np.integer)):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def format_json(payload: dict) -> str:
    return json.dumps(_jsonable(payload), indent=2) + "\n"


def columns_json(columns: dict[str, np.ndarray], meta: dict | None = None) -> str:
    return format_json({"meta": meta or {}, "columns": columns})

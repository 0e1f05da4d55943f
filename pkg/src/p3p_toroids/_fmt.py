"""Byte-stable JSON/CSV emission.

Floats are rendered with 17 significant digits (round-trip exact for IEEE
doubles) and dictionaries in insertion order, so a fixed (input, seed, flags)
always produces the same bytes.
"""
from __future__ import annotations

import math


def fmt_float(x: float) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "NaN"
        if math.isinf(x):
            return "Infinity" if x > 0 else "-Infinity"
    return format(float(x), ".17g")


def _json_scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v) or math.isinf(v):
            return f'"{fmt_float(v)}"'
        return fmt_float(v)
    if isinstance(v, str):
        escaped = v.replace("\\", "\\\\").replace('"', '\\"')
        escaped = escaped.replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t")
        return f'"{escaped}"'
    raise TypeError(f"not JSON-serializable: {type(v)!r}")


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON: insertion-ordered dicts, 17-significant-digit floats."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{_json_scalar(str(k))}: {to_json(v, indent + 2)}'
                 for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, bool, str, type(None))) for v in seq):
            return "[" + ", ".join(_json_scalar(v) for v in seq) + "]"
        items = [f"{inner}{to_json(v, indent + 2)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return _json_scalar(obj)


def csv_value(v) -> str:
    if isinstance(v, float):
        return fmt_float(v)
    return str(v)


def csv_line(values) -> str:
    return ",".join(csv_value(v) for v in values)

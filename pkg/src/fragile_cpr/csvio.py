"""Deterministic CSV emission shared by every experiment.

Dialect: comma-separated, '.' decimal point, one header row, LF line
endings, '#'-prefixed metadata comment lines, floats at 12 significant
digits.  Identical inputs produce byte-identical files.
"""

from __future__ import annotations

import math
import os


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return ""
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.12g}"
    return str(v)


def write_csv(path: str, header, rows, meta=()) -> str:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in meta:
            fh.write(f"# {line}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")
    return path


def read_csv(path: str) -> tuple[list[str], list[list[str]], list[str]]:
    """Read back the dialect above: (header, rows, metadata lines)."""
    meta: list[str] = []
    header: list[str] = []
    rows: list[list[str]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                meta.append(line[1:].strip())
            elif not header:
                header = line.split(",")
            else:
                rows.append(line.split(","))
    return header, rows, meta

"""Delimited table output shared by the CLI subcommands.

Reals are written with 17 significant digits so every value read back is
bit-identical to the one written.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

FORMATS = ("csv", "json")


def format_real(x: float) -> str:
    return "%.17g" % x


def render_table(header: list[str], rows, fmt: str = "csv") -> str:
    rows = [[float(v) for v in row] for row in rows]
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"row has {len(row)} fields, header has {len(header)}")
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(format_real(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps([dict(zip(header, row)) for row in rows], indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write_table(path, header: list[str], rows, fmt: str = "csv") -> None:
    """Write to ``path``; ``None`` or ``"-"`` means standard output."""
    text = render_table(header, rows, fmt)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def parse_table(text: str, fmt: str = "csv") -> tuple[list[str], np.ndarray]:
    if fmt == "csv":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        header = lines[0].split(",")
        values = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    elif fmt == "json":
        records = json.loads(text)
        header = list(records[0]) if records else []
        values = [[float(r[h]) for h in header] for r in records]
    else:
        raise ValueError(f"unknown format {fmt!r}")
    data = np.array(values, dtype=float).reshape(len(values), len(header))
    return header, data


def read_table(path, fmt: str | None = None) -> tuple[list[str], np.ndarray]:
    """Read a table written by :func:`write_table`.

    The format is inferred from the suffix when not given. An empty JSON
    table carries no header, so the returned header is empty.
    """
    path = Path(path)
    if fmt is None:
        fmt = "json" if path.suffix == ".json" else "csv"
    return parse_table(path.read_text(encoding="utf-8"), fmt)

"""CSV and plain-text report emission.

Every CSV starts with a ``#`` comment line carrying the tool version and the
scenario digest, followed by a header row. Floats are written with six
significant digits so repeated runs are byte-identical.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__


def fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        text = f"{value:.6g}"
        return "0" if text == "-0" else text
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence], digest: str) -> str:
    buf = io.StringIO()
    buf.write(f"# dercost {__version__} scenario_sha256={digest}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence], digest: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(render_csv(header, rows, digest))
    return path


def render_table(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    cells = [list(header)] + [[fmt(v) for v in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)

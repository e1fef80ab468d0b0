"""CSV point tables, SVG scenes and run configuration files."""
from __future__ import annotations

import configparser
import csv
import io as _io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


def fmt(x) -> str:
    """Numbers are written with 12 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x == 0.0:
            return "0"
        return "%.12g" % x
    return str(x)


class PointTableError(InputError):
    """Malformed point file; ``code`` is one of EMPTY, RAGGED, NONNUMERIC, NONFINITE."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass
class PointTable:
    header: list
    points: np.ndarray
    labels: list | None = None

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def d(self) -> int:
        return self.points.shape[1]


def parse_points_csv(path, label_column: str | None = None) -> PointTable:
    """Strict comma-separated table: header row, then rows of real numbers.

    A column named ``label_column`` (if given and present) is kept as text.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        text = fh.read()
    return parse_points_text(text, label_column, source=str(path))


def parse_points_text(text: str, label_column: str | None = None, source: str = "<text>") -> PointTable:
    rows = [r for r in csv.reader(_io.StringIO(text), strict=True) if r]
    if not rows:
        raise PointTableError("EMPTY", f"{source} has no header")
    header = [h.strip() for h in rows[0]]
    body = rows[1:]
    if not body:
        raise PointTableError("EMPTY", f"{source} has a header but no rows")
    lab = header.index(label_column) if label_column and label_column in header else None
    width = len(header)
    vals, labels = [], []
    for k, r in enumerate(body, start=2):
        if len(r) != width:
            raise PointTableError("RAGGED", f"{source} line {k} has {len(r)} cells, expected {width}")
        row = []
        for j, cell in enumerate(r):
            if j == lab:
                labels.append(cell.strip())
                continue
            try:
                v = float(cell.strip())
            except ValueError:
                raise PointTableError("NONNUMERIC", f"{source} line {k}: {cell!r} is not a number") from None
            if not math.isfinite(v):
                raise PointTableError("NONFINITE", f"{source} line {k}: {cell!r} is not finite")
            row.append(v)
        vals.append(row)
    cols = [h for j, h in enumerate(header) if j != lab]
    if not cols:
        raise PointTableError("EMPTY", f"{source} has no numeric columns")
    return PointTable(cols, np.array(vals, dtype=float), labels if lab is not None else None)


def table_text(header, rows) -> str:
    out = _io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return out.getvalue()


def write_table(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(table_text(header, rows))


def write_points_csv(path, table: PointTable) -> None:
    rows = table.points.tolist()
    header = list(table.header)
    if table.labels is not None:
        header.append("label")
        rows = [r + [lab] for r, lab in zip(rows, table.labels)]
    write_table(path, header, rows)


# -- SVG -----------------------------------------------------------------------------

_PALETTE = ("#1f3a93", "#b03a2e", "#1e8449", "#7d3c98", "#b9770e", "#117a65", "#5d6d7e")


@dataclass
class Scene:
    """Closed curves, open polylines and point sets in data coordinates."""

    regions: list = field(default_factory=list)
    curves: list = field(default_factory=list)
    points: list = field(default_factory=list)
    title: str = ""

    def add_region(self, vertices, label: str = ""):
        self.regions.append((np.asarray(vertices, dtype=float), label))

    def add_curve(self, vertices, label: str = "", closed: bool = True):
        self.curves.append((np.asarray(vertices, dtype=float), label, closed))

    def add_points(self, pts, label: str = ""):
        self.points.append((np.asarray(pts, dtype=float), label))

    @property
    def is_empty(self) -> bool:
        return not (self.regions or self.curves or self.points)


def _num(x: float) -> str:
    s = "%.4f" % x
    s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(scene: Scene, size: int = 480, margin: int = 24) -> str:
    if scene.is_empty:
        raise InputError("scene is empty")
    allpts = [v for v, _ in scene.regions] + [v for v, _, _ in scene.curves] + [p for p, _ in scene.points]
    allpts = np.vstack([a for a in allpts if len(a)])
    lo, hi = allpts.min(axis=0), allpts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    k = (size - 2 * margin) / span

    def tx(p):
        return margin + (p[:, 0] - lo[0]) * k, size - margin - (p[:, 1] - lo[1]) * k

    def path(v, closed):
        x, y = tx(v)
        cmd = " ".join(("M" if i == 0 else "L") + _num(a) + " " + _num(b) for i, (a, b) in enumerate(zip(x, y)))
        return cmd + (" Z" if closed else "")

    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    if scene.title:
        lines.append(f'<title>{_escape(scene.title)}</title>')
    for i, (v, label) in enumerate(scene.regions):
        c = _PALETTE[i % len(_PALETTE)]
        lines.append(f'<path d="{path(v, True)}" fill="{c}" fill-opacity="0.12" stroke="{c}" '
                     f'stroke-width="1.2"><title>{_escape(label)}</title></path>')
    for i, (v, label, closed) in enumerate(scene.curves):
        c = _PALETTE[(i + 3) % len(_PALETTE)]
        lines.append(f'<path d="{path(v, closed)}" fill="none" stroke="{c}" stroke-width="1" '
                     f'stroke-dasharray="4 2"><title>{_escape(label)}</title></path>')
    for i, (p, label) in enumerate(scene.points):
        c = "#000000" if i == 0 else _PALETTE[(i + 1) % len(_PALETTE)]
        x, y = tx(p)
        lines.append(f'<g fill="{c}"><title>{_escape(label)}</title>')
        lines += [f'<circle cx="{_num(a)}" cy="{_num(b)}" r="2"/>' for a, b in zip(x, y)]
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def emit_svg(scene: Scene, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(scene))


# -- configuration ------------------------------------------------------------------------

def read_config(path) -> dict:
    """Flat key/value view of an INI file; [run] keys first, other sections prefixed."""
    cp = configparser.ConfigParser(interpolation=None)
    if not cp.read(path, encoding="utf-8"):
        raise InputError(f"cannot read config file {path}")
    out = {}
    for sec in cp.sections():
        for k, v in cp.items(sec):
            key = k.replace("-", "_")
            out[key if sec == "run" else f"{sec}.{key}"] = v
    return out


def write_config(path, values: dict) -> None:
    cp = configparser.ConfigParser(interpolation=None)
    cp["run"] = {k: fmt(v) if not isinstance(v, str) else v
                 for k, v in sorted(values.items()) if v is not None}
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        cp.write(fh)

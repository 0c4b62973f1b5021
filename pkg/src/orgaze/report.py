"""Deterministic output rendering: mean±SD cells, aligned text tables,
CSV/JSON writers, and the session timeline SVG.

Everything here is pure string building. Identical inputs must yield
byte-identical outputs, so floats go through repr (shortest round
trip) in CSV/JSON and through fixed-digit formatting in report cells.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any, Sequence

from .annotations import TaskInterval
from .intervals import Interval
from .segmentation import GazeEvent

PLUS_MINUS = "±"


def format_mean_sd(
    mean: float | None,
    sd: float | None,
    percent: bool = False,
    digits: int = 2,
) -> str:
    """Render "mean±sd" cells: 89.22%±1.26% or 0.87±0.02.

    A missing mean renders as "n/a"; a missing SD renders the mean
    alone (one event has no spread to report).
    """
    if mean is None:
        return "n/a"
    suffix = "%" if percent else ""
    cell = f"{mean:.{digits}f}{suffix}"
    if sd is None:
        return cell
    return f"{cell}{PLUS_MINUS}{sd:.{digits}f}{suffix}"


def text_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned monospace table with a dash rule under the header."""
    cells = [list(headers)] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for n, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def render_csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> bytes:
    """CSV with \\n line endings and repr floats (platform-stable)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(headers))
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def _cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return value


def render_json(payload: Any) -> bytes:
    return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")


# -- timeline ----------------------------------------------------------

_SVG_W = 1000
_ROW_H = 28
_PAD_L = 170
_PAD_R = 20
_PAD_T = 30
_GAZE_COLOR = "#2a6fdb"
_TASK_COLOR = "#d98e2b"


def _x(t: float, phase: Interval) -> float:
    span = phase.duration
    return _PAD_L + (_SVG_W - _PAD_L - _PAD_R) * (t - phase.start) / span


def timeline_rows(
    events: Sequence[GazeEvent],
    tasks: Sequence[TaskInterval],
) -> list[tuple[str, float, float]]:
    """(track, start, end) rows for CSV export; gaze first, then tasks
    grouped by behavior in name order."""
    rows: list[tuple[str, float, float]] = [
        ("gaze", e.start, e.end) for e in events
    ]
    by_behavior: dict[str, list[TaskInterval]] = {}
    for t in tasks:
        by_behavior.setdefault(t.behavior, []).append(t)
    for behavior in sorted(by_behavior):
        for t in sorted(by_behavior[behavior], key=lambda ti: ti.interval.start):
            rows.append((behavior, t.interval.start, t.interval.end))
    return rows


def timeline_svg(
    events: Sequence[GazeEvent],
    tasks: Sequence[TaskInterval],
    phase: Interval,
    title: str = "",
) -> bytes:
    """One horizontal track per behavior plus a gaze track, rectangles
    proportional to time within the phase."""
    tracks: list[tuple[str, str, list[Interval]]] = [
        ("gaze", _GAZE_COLOR, [e.interval for e in events]),
    ]
    by_behavior: dict[str, list[Interval]] = {}
    for t in tasks:
        by_behavior.setdefault(t.behavior, []).append(t.interval)
    for behavior in sorted(by_behavior):
        tracks.append((behavior, _TASK_COLOR, by_behavior[behavior]))

    height = _PAD_T + _ROW_H * len(tracks) + 30
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{height}" viewBox="0 0 {_SVG_W} {height}">',
        f'<rect x="0" y="0" width="{_SVG_W}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_PAD_L}" y="18" font-family="monospace" '
            f'font-size="13">{_esc(title)}</text>'
        )
    for row, (name, color, intervals) in enumerate(tracks):
        y = _PAD_T + row * _ROW_H
        parts.append(
            f'<text x="8" y="{y + 18}" font-family="monospace" '
            f'font-size="12">{_esc(name)}</text>'
        )
        parts.append(
            f'<line x1="{_PAD_L}" y1="{y + _ROW_H - 4}" '
            f'x2="{_SVG_W - _PAD_R}" y2="{y + _ROW_H - 4}" '
            f'stroke="#cccccc" stroke-width="1"/>'
        )
        for iv in sorted(intervals, key=lambda i: (i.start, i.end)):
            cut = iv.intersection(phase)
            if cut is None:
                continue
            x0 = _x(cut.start, phase)
            x1 = _x(cut.end, phase)
            parts.append(
                f'<rect x="{x0:.2f}" y="{y + 4}" width="{x1 - x0:.2f}" '
                f'height="{_ROW_H - 10}" fill="{color}"/>'
            )
    # Axis labels at the phase bounds.
    y_axis = _PAD_T + _ROW_H * len(tracks) + 16
    parts.append(
        f'<text x="{_PAD_L}" y="{y_axis}" font-family="monospace" '
        f'font-size="11">{phase.start:.1f}s</text>'
    )
    parts.append(
        f'<text x="{_SVG_W - _PAD_R - 50}" y="{y_axis}" font-family="monospace" '
        f'font-size="11">{phase.end:.1f}s</text>'
    )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;").replace('"', "&quot;"))

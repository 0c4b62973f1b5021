"""Closed-open time intervals and exact union/intersection measures.

All downstream time accounting (gaze events, task windows, overlap
percentages) reduces to sweeps over sorted, merged interval lists, so
the helpers here are the single source of truth for that arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Interval:
    """A time interval [start, end] in seconds with start <= end."""

    start: float
    end: float

    def __post_init__(self):
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError(f"non-finite interval ({self.start}, {self.end})")
        if self.end < self.start:
            raise ValueError(f"interval end {self.end} before start {self.start}")

    @property
    def duration(self) -> float:
        return self.end - self.start

    def contains(self, t: float) -> bool:
        return self.start <= t < self.end

    def overlaps(self, other: "Interval") -> bool:
        return self.start < other.end and other.start < self.end

    def intersection(self, other: "Interval") -> "Interval | None":
        start = max(self.start, other.start)
        end = min(self.end, other.end)
        if end <= start:
            return None
        return Interval(start, end)

    def clip(self, window: "Interval") -> "Interval | None":
        """Truncate to window; None when the overlap has zero measure."""
        return self.intersection(window)

    def translate(self, offset: float) -> "Interval":
        return Interval(self.start + offset, self.end + offset)


def union_intervals(intervals: Iterable[Interval]) -> list[Interval]:
    """Sorted, pairwise-disjoint union. Touching intervals are merged."""
    ordered = sorted(intervals, key=lambda iv: (iv.start, iv.end))
    merged: list[Interval] = []
    for iv in ordered:
        if iv.duration == 0:
            continue
        if merged and iv.start <= merged[-1].end:
            if iv.end > merged[-1].end:
                merged[-1] = Interval(merged[-1].start, iv.end)
        else:
            merged.append(iv)
    return merged


def union_measure(intervals: Iterable[Interval]) -> float:
    return sum(iv.duration for iv in union_intervals(intervals))


def intersect_unions(a: Sequence[Interval], b: Sequence[Interval]) -> list[Interval]:
    """Intersection of two interval unions via a two-pointer sweep."""
    xs = union_intervals(a)
    ys = union_intervals(b)
    out: list[Interval] = []
    i = j = 0
    while i < len(xs) and j < len(ys):
        lo = max(xs[i].start, ys[j].start)
        hi = min(xs[i].end, ys[j].end)
        if hi > lo:
            out.append(Interval(lo, hi))
        if xs[i].end <= ys[j].end:
            i += 1
        else:
            j += 1
    return out


def overlap_measure(a: Sequence[Interval], b: Sequence[Interval]) -> float:
    return sum(iv.duration for iv in intersect_unions(a, b))

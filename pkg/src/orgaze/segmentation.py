"""Turn a per-frame binary series into gaze events.

Three passes, in order:

  1. maximal runs of consecutive true samples become raw intervals
     [first_true_t, last_true_t + 1/fps): the last frame still covers
     one nominal period;
  2. adjacent intervals separated by a false gap <= max_gap seconds
     merge (blink and single-frame dropout tolerance);
  3. merged intervals shorter than min_duration seconds are dropped.

Boundary conventions are part of the contract: the gap comparison is
<= and the duration comparison is >=.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from .intervals import Interval


@dataclass(frozen=True)
class BinarySeries:
    """Timestamped boolean samples at a nominal frame rate.

    confidences, when present, runs parallel to samples and holds the
    winning onfocus score for true samples (None elsewhere).
    """

    samples: tuple[tuple[float, bool], ...]
    fps_nominal: float
    confidences: tuple[float | None, ...] | None = None

    def __post_init__(self):
        if self.fps_nominal <= 0 or not math.isfinite(self.fps_nominal):
            raise ValueError(f"fps_nominal {self.fps_nominal} must be positive")
        for i in range(1, len(self.samples)):
            if self.samples[i][0] <= self.samples[i - 1][0]:
                raise ValueError(
                    f"timestamps must increase strictly: sample {i} at "
                    f"t={self.samples[i][0]} after t={self.samples[i - 1][0]}"
                )
        if self.confidences is not None and len(self.confidences) != len(self.samples):
            raise ValueError("confidences must run parallel to samples")

    @property
    def timestamps(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.samples)


@dataclass(frozen=True)
class SegConfig:
    max_gap: float = 0.25
    min_duration: float = 0.30

    def __post_init__(self):
        if self.max_gap < 0 or not math.isfinite(self.max_gap):
            raise ValueError(f"max_gap {self.max_gap} must be >= 0")
        if self.min_duration < 0 or not math.isfinite(self.min_duration):
            raise ValueError(f"min_duration {self.min_duration} must be >= 0")


@dataclass(frozen=True)
class GazeEvent:
    """One contiguous stretch of monitor-directed gaze."""

    interval: Interval
    n_frames: int
    mean_confidence: float | None = None

    @property
    def start(self) -> float:
        return self.interval.start

    @property
    def end(self) -> float:
        return self.interval.end

    @property
    def duration(self) -> float:
        return self.interval.duration


def _raw_runs(series: BinarySeries) -> list[tuple[float, float, list[int]]]:
    """Maximal true runs as (start, end, sample_indices)."""
    period = 1.0 / series.fps_nominal
    runs: list[tuple[float, float, list[int]]] = []
    current: list[int] = []
    for i, (t, value) in enumerate(series.samples):
        if value:
            current.append(i)
        elif current:
            first_t = series.samples[current[0]][0]
            last_t = series.samples[current[-1]][0]
            runs.append((first_t, last_t + period, current))
            current = []
    if current:
        first_t = series.samples[current[0]][0]
        last_t = series.samples[current[-1]][0]
        runs.append((first_t, last_t + period, current))
    return runs


def segment(series: BinarySeries, config: SegConfig | None = None) -> list[GazeEvent]:
    """Segment a binary series into gaze events (sorted, non-overlapping)."""
    if config is None:
        config = SegConfig()

    merged: list[tuple[float, float, list[int]]] = []
    for start, end, idxs in _raw_runs(series):
        if merged and start - merged[-1][1] <= config.max_gap:
            prev_start, _, prev_idxs = merged[-1]
            merged[-1] = (prev_start, end, prev_idxs + idxs)
        else:
            merged.append((start, end, list(idxs)))

    events: list[GazeEvent] = []
    for start, end, idxs in merged:
        if end - start >= config.min_duration:
            mean_conf = None
            if series.confidences is not None:
                scores = [series.confidences[i] for i in idxs
                          if series.confidences[i] is not None]
                if scores:
                    mean_conf = sum(scores) / len(scores)
            events.append(GazeEvent(
                interval=Interval(start, end),
                n_frames=len(idxs),
                mean_confidence=mean_conf,
            ))
    return events


@dataclass(frozen=True)
class EventStats:
    count: int
    mean_duration: float | None
    sd_duration: float | None
    total_duration: float


def series_stats(events: list[GazeEvent]) -> EventStats:
    """Count / mean / sample-SD / total of event durations.

    mean is None when there are no events; SD is None below two events
    (a single duration has no spread to estimate).
    """
    durations = [e.duration for e in events]
    if not durations:
        return EventStats(0, None, None, 0.0)
    mean = sum(durations) / len(durations)
    sd = statistics.stdev(durations) if len(durations) >= 2 else None
    return EventStats(len(durations), mean, sd, sum(durations))


def events_to_series(
    events: list[GazeEvent],
    timestamps: tuple[float, ...] | list[float],
    fps_nominal: float,
) -> BinarySeries:
    """Rasterize events back onto a timestamp grid (true where a
    sample time falls inside an event's half-open interval)."""
    samples = tuple(
        (t, any(e.interval.contains(t) for e in events))
        for t in timestamps
    )
    return BinarySeries(samples=samples, fps_nominal=fps_nominal)

"""Visual-attention metrics, task-overlap percentages, and the paired
statistics used to compare automated output against human coding.

Conventions:
  - frequency is events per 5 minutes: n_events * 300 / phase_duration;
  - total time is the percentage of the phase covered by the union of
    clipped events (overlap never double-counts);
  - events are clipped to the phase before counting, and clipped-empty
    events drop out entirely.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Sequence

from .annotations import TaskInterval
from .errors import EmptyPhase, LengthMismatch, TooFewPairs, ZeroTaskTime
from .intervals import Interval, intersect_unions, union_intervals, union_measure
from .segmentation import GazeEvent

TESTS = ("paired_t", "wilcoxon_signed_rank")

# Exact sign-flip enumeration is 2^n subsets; past this n the normal
# approximation with tie correction takes over.
_EXACT_WILCOXON_MAX_N = 25


def _as_interval(item) -> Interval:
    if isinstance(item, Interval):
        return item
    interval = getattr(item, "interval", None)
    if isinstance(interval, Interval):
        return interval
    raise TypeError(f"cannot read an interval from {item!r}")


@dataclass(frozen=True)
class VAMetrics:
    """Per-phase visual-attention summary for one event stream."""

    frequency_per_5min: float
    mean_duration_s: float | None
    sd_duration_s: float | None
    total_time_pct: float
    phase: Interval
    n_events: int

    def to_dict(self) -> dict:
        return {
            "frequency_per_5min": self.frequency_per_5min,
            "mean_duration_s": self.mean_duration_s,
            "sd_duration_s": self.sd_duration_s,
            "total_time_pct": self.total_time_pct,
            "phase_start": self.phase.start,
            "phase_end": self.phase.end,
            "n_events": self.n_events,
        }


def va_summary(
    events: Sequence[GazeEvent | TaskInterval | Interval],
    phase: Interval,
) -> VAMetrics:
    """Compute frequency / durations / total-time% for events clipped
    to a phase window."""
    if phase.duration <= 0:
        raise EmptyPhase(f"phase {phase} has no duration")
    clipped: list[Interval] = []
    for item in events:
        cut = _as_interval(item).intersection(phase)
        if cut is not None:
            clipped.append(cut)
    durations = [c.duration for c in clipped]
    n = len(clipped)
    mean = sum(durations) / n if n else None
    sd = statistics.stdev(durations) if n >= 2 else None
    covered = union_measure(clipped)
    return VAMetrics(
        frequency_per_5min=n * 300.0 / phase.duration,
        mean_duration_s=mean,
        sd_duration_s=sd,
        total_time_pct=100.0 * covered / phase.duration,
        phase=phase,
        n_events=n,
    )


@dataclass(frozen=True)
class OverlapStats:
    behavior: str
    task_time_s: float
    overlap_time_s: float
    overlap_pct: float


def task_overlap(
    events: Sequence[GazeEvent | Interval],
    tasks: Sequence[TaskInterval],
) -> dict[str, OverlapStats]:
    """Per-behavior share of task time spent with gaze on the monitor.

    Both sides are unioned first, so overlapping task rows or events
    are measured once. overlap_pct = 100 * |gaze ∩ task| / |task|.
    """
    gaze_union = union_intervals(_as_interval(e) for e in events)
    by_behavior: dict[str, list[Interval]] = {}
    for task in tasks:
        by_behavior.setdefault(task.behavior, []).append(task.interval)

    out: dict[str, OverlapStats] = {}
    for behavior in sorted(by_behavior):
        task_union = union_intervals(by_behavior[behavior])
        task_time = union_measure(task_union)
        if task_time <= 0:
            raise ZeroTaskTime(behavior)
        overlap = union_measure(intersect_unions(gaze_union, task_union))
        out[behavior] = OverlapStats(
            behavior=behavior,
            task_time_s=task_time,
            overlap_time_s=overlap,
            overlap_pct=100.0 * overlap / task_time,
        )
    return out


def windowed_frequency(
    events: Sequence[GazeEvent | Interval],
    phase: Interval,
    window_s: float = 300.0,
    step_s: float = 60.0,
) -> list[tuple[Interval, float]]:
    """Sliding-window event counts, scaled to per-5-min units.

    Windows start at phase.start and advance by step_s while they fit
    inside the phase; an event is counted in a window when any part of
    it intersects the window. The last window may be shorter if the
    phase is shorter than window_s (then it is the whole phase).
    """
    if phase.duration <= 0:
        raise EmptyPhase(f"phase {phase} has no duration")
    if window_s <= 0 or step_s <= 0:
        raise ValueError("window_s and step_s must be positive")
    intervals = [_as_interval(e) for e in events]
    effective = min(window_s, phase.duration)
    out: list[tuple[Interval, float]] = []
    start = phase.start
    while True:
        window = Interval(start, start + effective)
        n = sum(1 for iv in intervals
                if iv.intersection(window) is not None)
        out.append((window, n * 300.0 / effective))
        start += step_s
        if start + effective > phase.end + 1e-12:
            break
    return out


# -- paired statistics -------------------------------------------------


@dataclass(frozen=True)
class ComparisonResult:
    mean_a: float
    sd_a: float | None
    mean_b: float
    sd_b: float | None
    p_value: float
    test: str
    n_pairs: int
    statistic: float

    def to_dict(self) -> dict:
        return {
            "mean_a": self.mean_a, "sd_a": self.sd_a,
            "mean_b": self.mean_b, "sd_b": self.sd_b,
            "p_value": self.p_value, "test": self.test,
            "n_pairs": self.n_pairs, "statistic": self.statistic,
        }


def _betacf(a: float, b: float, x: float) -> float:
    # Lentz's continued fraction for the incomplete beta; standard
    # numerics, converges in ~50 iterations for the df we see here.
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, 300):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-15:
            break
    return h


def _betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _t_sf2(t: float, df: float) -> float:
    """Two-sided tail probability of Student's t."""
    return _betainc(df / 2.0, 0.5, df / (df + t * t))


def paired_t(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Paired t statistic and two-sided p-value.

    Degenerate case: when every pairwise difference is identical the
    statistic is +/-inf (p=0) unless the common difference is zero
    (t=0, p=1).
    """
    diffs = [x - y for x, y in zip(a, b)]
    n = len(diffs)
    mean_d = sum(diffs) / n
    var_d = sum((d - mean_d) ** 2 for d in diffs) / (n - 1)
    if var_d == 0.0:
        if mean_d == 0.0:
            return 0.0, 1.0
        return math.copysign(math.inf, mean_d), 0.0
    t = mean_d / math.sqrt(var_d / n)
    return t, _t_sf2(t, n - 1)


def _midranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j + 2) / 2.0  # average of 1-based positions i+1..j+1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def wilcoxon_signed_rank(
    a: Sequence[float], b: Sequence[float]
) -> tuple[float, float]:
    """Wilcoxon signed-rank statistic (W+, zero-diff pairs dropped) and
    two-sided p-value.

    Exact for n <= 25 via a subset-sum count over doubled midranks, so
    ties are handled without approximation; larger n falls back to the
    normal approximation with the usual tie correction.
    """
    diffs = [x - y for x, y in zip(a, b) if x - y != 0.0]
    n = len(diffs)
    if n == 0:
        return 0.0, 1.0
    ranks = _midranks([abs(d) for d in diffs])
    w_plus = sum(r for r, d in zip(ranks, diffs) if d > 0)

    if n <= _EXACT_WILCOXON_MAX_N:
        # Doubled midranks are exact integers; count subsets by summed
        # doubled rank, then fold the distribution around its center.
        doubled = [round(2 * r) for r in ranks]
        total = sum(doubled)  # == n * (n + 1)
        counts = [0] * (total + 1)
        counts[0] = 1
        for dr in doubled:
            for s in range(total, dr - 1, -1):
                if counts[s - dr]:
                    counts[s] += counts[s - dr]
        observed = round(2 * w_plus)
        center_dist = abs(2 * observed - total)
        favorable = sum(c for s, c in enumerate(counts)
                        if abs(2 * s - total) >= center_dist)
        return w_plus, favorable / (1 << n)

    mean_w = n * (n + 1) / 4.0
    tie_term = 0.0
    seen: dict[float, int] = {}
    for d in diffs:
        seen[abs(d)] = seen.get(abs(d), 0) + 1
    for count in seen.values():
        tie_term += count ** 3 - count
    var_w = n * (n + 1) * (2 * n + 1) / 24.0 - tie_term / 48.0
    if var_w <= 0:
        return w_plus, 1.0
    z = (w_plus - mean_w) / math.sqrt(var_w)
    return w_plus, math.erfc(abs(z) / math.sqrt(2.0))


def paired_compare(
    a: Sequence[float], b: Sequence[float], test: str = "paired_t"
) -> ComparisonResult:
    """Compare two paired samples; a is the automated side, b the
    human side, but the tests are symmetric."""
    if test not in TESTS:
        raise ValueError(f"test must be one of {TESTS}, got {test!r}")
    if len(a) != len(b):
        raise LengthMismatch(f"paired samples differ in length: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise TooFewPairs(f"need at least 2 pairs, got {len(a)}")
    for v in list(a) + list(b):
        if not math.isfinite(v):
            raise ValueError(f"non-finite sample value {v}")

    if test == "paired_t":
        stat, p = paired_t(a, b)
    else:
        stat, p = wilcoxon_signed_rank(a, b)
    return ComparisonResult(
        mean_a=statistics.mean(a),
        sd_a=statistics.stdev(a) if len(a) >= 2 else None,
        mean_b=statistics.mean(b),
        sd_b=statistics.stdev(b) if len(b) >= 2 else None,
        p_value=p,
        test=test,
        n_pairs=len(a),
        statistic=stat,
    )

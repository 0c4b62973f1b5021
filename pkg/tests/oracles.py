"""Independent reference implementations used as test oracles.

Each function here deliberately uses a different algorithmic shape
than the library code it checks (direct scans, repeated passes,
bitmask rasterization, exhaustive enumeration), so a shared bug would
have to be written twice in two different ways.
"""

from __future__ import annotations

import math
from fractions import Fraction


# -- segmentation ------------------------------------------------------


def brute_force_segment(
    samples: list[tuple[float, bool]],
    fps: float,
    max_gap: float,
    min_duration: float,
) -> list[tuple[float, float, int]]:
    """(start, end, n_true_frames) events via direct scan + repeated
    merge passes until fixpoint."""
    period = 1.0 / fps
    runs: list[tuple[float, float, int]] = []
    i = 0
    n = len(samples)
    while i < n:
        if not samples[i][1]:
            i += 1
            continue
        j = i
        while j + 1 < n and samples[j + 1][1]:
            j += 1
        runs.append((samples[i][0], samples[j][0] + period, j - i + 1))
        i = j + 1

    changed = True
    while changed:
        changed = False
        merged: list[tuple[float, float, int]] = []
        for run in runs:
            if merged and run[0] - merged[-1][1] <= max_gap:
                prev = merged[-1]
                merged[-1] = (prev[0], run[1], prev[2] + run[2])
                changed = True
            else:
                merged.append(run)
        runs = merged
    return [r for r in runs if r[1] - r[0] >= min_duration]


# -- interval overlap --------------------------------------------------


def rasterized_overlap_ms(
    gaze: list[tuple[float, float]],
    tasks: list[tuple[float, float]],
) -> tuple[int, int]:
    """(task_ms, overlap_ms) on a 1 ms grid via big-int bitmasks.

    Exact when every endpoint is millisecond-aligned; callers generate
    such inputs.
    """
    def mask(intervals: list[tuple[float, float]]) -> int:
        m = 0
        for a, b in intervals:
            lo = round(a * 1000)
            hi = round(b * 1000)
            if hi > lo:
                m |= ((1 << (hi - lo)) - 1) << lo
        return m

    gaze_mask = mask(gaze)
    task_mask = mask(tasks)
    return task_mask.bit_count(), (gaze_mask & task_mask).bit_count()


# -- statistics --------------------------------------------------------


def wilcoxon_enumeration(a: list[float], b: list[float]) -> tuple[float, float]:
    """(W+, two-sided p) by enumerating all 2^n sign assignments.

    Midranks computed with Fractions so ties introduce no float error;
    p is the exact count ratio. Zero differences are dropped first.
    """
    diffs = [x - y for x, y in zip(a, b) if x != y]
    n = len(diffs)
    if n == 0:
        return 0.0, 1.0
    magnitudes = [abs(d) for d in diffs]
    order = sorted(range(n), key=lambda i: magnitudes[i])
    ranks = [Fraction(0)] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and magnitudes[order[j + 1]] == magnitudes[order[i]]:
            j += 1
        r = Fraction(i + 1 + j + 1, 2)
        for k in range(i, j + 1):
            ranks[order[k]] = r
        i = j + 1
    w_obs = sum((r for r, d in zip(ranks, diffs) if d > 0), Fraction(0))
    total = sum(ranks, Fraction(0))
    dist_obs = abs(2 * w_obs - total)
    favorable = 0
    for bits in range(1 << n):
        w = sum((ranks[i] for i in range(n) if bits >> i & 1), Fraction(0))
        if abs(2 * w - total) >= dist_obs:
            favorable += 1
    return float(w_obs), favorable / (1 << n)


def t_twosided_p(t: float, df: int) -> float:
    """Two-sided Student-t tail probability by the classic closed-form
    trigonometric series for integer degrees of freedom (finite sum in
    cos(theta), theta = arctan(|t|/sqrt(df)))."""
    theta = math.atan2(abs(t), math.sqrt(df))
    c = math.cos(theta)
    s = math.sin(theta)
    if df == 1:
        inside = 2.0 / math.pi * theta
    elif df % 2 == 1:
        term = c
        series = c
        for k in range(2, df - 1, 2):
            term *= k / (k + 1) * c * c
            series += term
        inside = 2.0 / math.pi * (theta + s * series)
    else:
        term = 1.0
        series = 1.0
        for k in range(1, df - 1, 2):
            term *= k / (k + 1) * c * c
            series += term
        inside = s * series
    return max(0.0, min(1.0, 1.0 - inside))


def paired_t_reference(a: list[float], b: list[float]) -> tuple[float, float]:
    """Textbook paired t statistic with the closed-form p above."""
    n = len(a)
    d = [x - y for x, y in zip(a, b)]
    mean = sum(d) / n
    var = sum((v - mean) ** 2 for v in d) / (n - 1)
    if var == 0.0:
        return (0.0, 1.0) if mean == 0.0 else (math.copysign(math.inf, mean), 0.0)
    t = mean / math.sqrt(var / n)
    return t, t_twosided_p(t, n - 1)


# -- agreement ---------------------------------------------------------


def confusion_reference(
    pred: list[bool], truth: list[bool]
) -> tuple[float, float | None]:
    """Accuracy/F1 via an explicit 2x2 table keyed by label pairs."""
    table: dict[tuple[bool, bool], int] = {}
    for pair in zip(pred, truth):
        table[pair] = table.get(pair, 0) + 1
    tp = table.get((True, True), 0)
    fp = table.get((True, False), 0)
    fn = table.get((False, True), 0)
    tn = table.get((False, False), 0)
    accuracy = (tp + tn) / len(pred)
    if 2 * tp + fp + fn == 0:
        return accuracy, None
    precision_recall_denom = 2 * tp + fp + fn
    return accuracy, 2 * tp / precision_recall_denom

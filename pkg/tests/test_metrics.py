import math

import pytest
import scipy.stats
from hypothesis import given, strategies as st

from oracles import (
    paired_t_reference,
    rasterized_overlap_ms,
    t_twosided_p,
    wilcoxon_enumeration,
)
from orgaze.annotations import TaskInterval
from orgaze.errors import EmptyPhase, LengthMismatch, TooFewPairs, ZeroTaskTime
from orgaze.intervals import Interval
from orgaze.metrics import (
    paired_compare,
    paired_t,
    task_overlap,
    va_summary,
    wilcoxon_signed_rank,
    windowed_frequency,
)


def task(behavior, start, end, subject="anesthesiologist", modifier=None):
    return TaskInterval(behavior=behavior, subject=subject,
                        interval=Interval(start, end), modifier=modifier)


# -- va_summary --------------------------------------------------------


def test_va_summary_direct_arithmetic():
    events = [Interval(i * 60.0, i * 60.0 + 6.0) for i in range(10)]
    m = va_summary(events, Interval(0.0, 600.0))
    assert m.frequency_per_5min == 5.0
    assert m.total_time_pct == 10.0
    assert m.n_events == 10
    assert m.mean_duration_s == 6.0
    assert m.sd_duration_s == 0.0


def test_va_summary_no_events():
    m = va_summary([], Interval(0.0, 600.0))
    assert m.frequency_per_5min == 0.0
    assert m.total_time_pct == 0.0
    assert m.n_events == 0
    assert m.mean_duration_s is None
    assert m.sd_duration_s is None


def test_va_summary_clips_to_phase():
    m = va_summary([Interval(-5.0, 5.0)], Interval(0.0, 100.0))
    assert m.n_events == 1
    assert m.total_time_pct == 5.0
    assert m.mean_duration_s == 5.0


def test_va_summary_reference_values():
    # 14 events of 4.59 s across a 300 s phase
    events = [Interval(i * 21.0, i * 21.0 + 4.59) for i in range(14)]
    m = va_summary(events, Interval(0.0, 300.0))
    assert m.frequency_per_5min == 14.0
    assert m.mean_duration_s == pytest.approx(4.59, abs=1e-9)
    assert m.total_time_pct == pytest.approx(21.42, abs=1e-9)


def test_va_summary_empty_phase_rejected():
    with pytest.raises(EmptyPhase):
        va_summary([], Interval(5.0, 5.0))


def test_va_summary_overlapping_events_counted_once_for_total():
    m = va_summary([Interval(0.0, 10.0), Interval(5.0, 15.0)],
                   Interval(0.0, 100.0))
    assert m.n_events == 2
    assert m.total_time_pct == 15.0
    assert m.mean_duration_s == 10.0


def test_va_summary_full_coverage_is_exactly_100():
    m = va_summary([Interval(-10.0, 500.0)], Interval(0.0, 300.0))
    assert m.total_time_pct == 100.0


@st.composite
def events_and_shift(draw):
    n = draw(st.integers(min_value=0, max_value=8))
    events = []
    for _ in range(n):
        a = draw(st.integers(min_value=0, max_value=999_000))
        b = draw(st.integers(min_value=a + 1, max_value=1_000_000))
        events.append(Interval(a / 1000.0, b / 1000.0))
    shift = draw(st.integers(min_value=0, max_value=400)) * 0.25
    return events, shift


@given(events_and_shift())
def test_va_summary_translation_invariant(case):
    events, shift = case
    phase = Interval(0.0, 1000.0)
    base = va_summary(events, phase)
    moved = va_summary([e.translate(shift) for e in events],
                       phase.translate(shift))
    assert moved.n_events == base.n_events
    assert moved.frequency_per_5min == pytest.approx(
        base.frequency_per_5min, rel=1e-9)
    assert moved.total_time_pct == pytest.approx(base.total_time_pct, rel=1e-9,
                                                 abs=1e-9)
    assert 0.0 <= moved.total_time_pct <= 100.0 + 1e-9


# -- task_overlap ------------------------------------------------------


def test_task_overlap_quarter():
    out = task_overlap([Interval(10.0, 20.0)], [task("Intubation", 0.0, 40.0)])
    stats = out["Intubation"]
    assert stats.overlap_pct == 25.0
    assert stats.task_time_s == 40.0
    assert stats.overlap_time_s == 10.0


def test_task_overlap_disjoint_is_zero():
    out = task_overlap([Interval(100.0, 110.0)],
                       [task("Intubation", 0.0, 40.0)])
    assert out["Intubation"].overlap_pct == 0.0


def test_task_overlap_unions_overlapping_task_rows():
    out = task_overlap(
        [Interval(0.0, 15.0)],
        [task("Intubation", 0.0, 10.0), task("Intubation", 5.0, 15.0)],
    )
    stats = out["Intubation"]
    assert stats.task_time_s == 15.0
    assert stats.overlap_pct == 100.0


def test_task_overlap_zero_task_time():
    class RawTask:
        def __init__(self, behavior, interval):
            self.behavior = behavior
            self.interval = interval

    with pytest.raises(ZeroTaskTime):
        task_overlap([], [RawTask("Mask ventilation", Interval(5.0, 5.0))])


@st.composite
def overlap_instance(draw):
    def ms_interval(hi_ms):
        a = draw(st.integers(min_value=0, max_value=hi_ms - 1))
        b = draw(st.integers(min_value=a + 1, max_value=hi_ms))
        return Interval(a / 1000.0, b / 1000.0)

    events = [ms_interval(60_000)
              for _ in range(draw(st.integers(min_value=0, max_value=6)))]
    behaviors = ("Intubation", "Mask ventilation")
    tasks = [task(draw(st.sampled_from(behaviors)), iv.start, iv.end)
             for iv in (ms_interval(60_000)
                        for _ in range(draw(st.integers(min_value=1, max_value=6))))]
    return events, tasks


@given(overlap_instance())
def test_task_overlap_matches_millisecond_rasterization(case):
    events, tasks = case
    out = task_overlap(events, tasks)
    for behavior in {t.behavior for t in tasks}:
        task_ms, overlap_ms = rasterized_overlap_ms(
            [(e.start, e.end) for e in events],
            [(t.interval.start, t.interval.end) for t in tasks
             if t.behavior == behavior],
        )
        stats = out[behavior]
        assert stats.task_time_s == pytest.approx(task_ms / 1000.0, abs=1e-9)
        assert stats.overlap_time_s == pytest.approx(overlap_ms / 1000.0, abs=1e-9)
        want_pct = 100.0 * overlap_ms / task_ms
        assert stats.overlap_pct == pytest.approx(want_pct, abs=1e-6)
        assert abs(stats.overlap_pct - want_pct) < 0.1  # pinned tolerance


# -- windowed_frequency ------------------------------------------------


def test_windowed_frequency_slides_by_step():
    events = [Interval(10.0, 20.0), Interval(400.0, 410.0)]
    rows = windowed_frequency(events, Interval(0.0, 600.0),
                              window_s=300.0, step_s=60.0)
    assert [w.start for w, _ in rows] == [0.0, 60.0, 120.0, 180.0, 240.0, 300.0]
    assert all(w.duration == 300.0 for w, _ in rows)
    assert [f for _, f in rows] == [1.0, 0.0, 1.0, 1.0, 1.0, 1.0]


def test_windowed_frequency_short_phase_uses_whole_phase():
    rows = windowed_frequency([Interval(1.0, 2.0), Interval(50.0, 51.0)],
                              Interval(0.0, 100.0))
    assert len(rows) == 1
    window, freq = rows[0]
    assert (window.start, window.end) == (0.0, 100.0)
    assert freq == 2 * 300.0 / 100.0


def test_windowed_frequency_validation():
    with pytest.raises(EmptyPhase):
        windowed_frequency([], Interval(3.0, 3.0))
    with pytest.raises(ValueError):
        windowed_frequency([], Interval(0.0, 10.0), window_s=0.0)
    with pytest.raises(ValueError):
        windowed_frequency([], Interval(0.0, 10.0), step_s=-1.0)


# -- paired statistics -------------------------------------------------


def test_identical_vectors_give_p_one():
    a = [3.0, 5.5, 2.0, 9.0]
    for test_name in ("paired_t", "wilcoxon_signed_rank"):
        result = paired_compare(a, list(a), test=test_name)
        assert result.p_value == 1.0
        assert result.n_pairs == 4


def test_constant_nonzero_difference_gives_p_zero():
    a = [1.0, 2.0, 3.0, 4.0, 5.0]
    b = [2.0, 3.0, 4.0, 5.0, 6.0]
    result = paired_compare(a, b, test="paired_t")
    assert result.p_value == 0.0
    assert math.isinf(result.statistic) and result.statistic < 0


def test_paired_compare_validation():
    with pytest.raises(LengthMismatch):
        paired_compare([1.0, 2.0], [1.0], test="paired_t")
    with pytest.raises(TooFewPairs):
        paired_compare([1.0], [2.0], test="paired_t")
    with pytest.raises(ValueError):
        paired_compare([1.0, 2.0], [1.0, 2.0], test="sign_test")
    with pytest.raises(ValueError):
        paired_compare([1.0, float("nan")], [1.0, 2.0], test="paired_t")


def test_paired_compare_reports_both_sides():
    result = paired_compare([1.0, 2.0, 3.0], [4.0, 6.0, 8.0], test="paired_t")
    assert result.mean_a == 2.0
    assert result.mean_b == 6.0
    assert result.sd_a == 1.0
    assert result.sd_b == 2.0


float_vec = st.lists(
    st.floats(min_value=-50.0, max_value=50.0,
              allow_nan=False, allow_infinity=False),
    min_size=2, max_size=20,
)


@given(float_vec)
def test_paired_t_matches_closed_form_and_scipy(a):
    import random

    rng = random.Random(sum(int(x * 7) for x in a) & 0xFFFF)
    b = [x + rng.uniform(-3.0, 3.0) for x in a]
    t_stat, p = paired_t(a, b)
    t_ref, p_ref = paired_t_reference(list(a), b)
    assert t_stat == pytest.approx(t_ref, rel=1e-12, abs=1e-12)
    assert p == pytest.approx(p_ref, abs=1e-9)
    if 0.0 < p < 1.0 and math.isfinite(t_stat):
        scipy_t, scipy_p = scipy.stats.ttest_rel(a, b)
        assert t_stat == pytest.approx(scipy_t, rel=1e-9, abs=1e-12)
        assert p == pytest.approx(scipy_p, abs=1e-9)


int_pairs = st.lists(
    st.tuples(st.integers(min_value=-5, max_value=5),
              st.integers(min_value=-5, max_value=5)),
    min_size=2, max_size=12,
)


@given(int_pairs)
def test_wilcoxon_equals_exhaustive_enumeration(pairs):
    a = [float(x) for x, _ in pairs]
    b = [float(y) for _, y in pairs]
    w, p = wilcoxon_signed_rank(a, b)
    w_ref, p_ref = wilcoxon_enumeration(a, b)
    assert w == w_ref
    assert p == p_ref  # exact: both are integer-count ratios


def test_wilcoxon_all_zero_differences():
    w, p = wilcoxon_signed_rank([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert (w, p) == (0.0, 1.0)


def _scipy_wilcoxon_approx(a, b):
    kwargs = dict(correction=False, alternative="two-sided")
    try:
        res = scipy.stats.wilcoxon(a, b, method="approx", **kwargs)
    except TypeError:
        res = scipy.stats.wilcoxon(a, b, mode="approx", **kwargs)
    return res.pvalue


@given(st.lists(st.integers(min_value=-6, max_value=6).filter(lambda d: d != 0),
                min_size=30, max_size=40),
       st.randoms(use_true_random=False))
def test_wilcoxon_large_n_matches_scipy_normal_approximation(deltas, rng):
    # every delta nonzero so n stays above the exact-enumeration cutoff
    base = [rng.uniform(0.0, 20.0) for _ in deltas]
    a = [x + d for x, d in zip(base, deltas)]
    w, p = wilcoxon_signed_rank(a, base)
    assert p == pytest.approx(_scipy_wilcoxon_approx(a, base), abs=1e-9)


@given(int_pairs)
def test_two_sided_symmetry(pairs):
    a = [float(x) for x, _ in pairs]
    b = [float(y) for _, y in pairs]
    for name in ("paired_t", "wilcoxon_signed_rank"):
        ab = paired_compare(a, b, test=name)
        ba = paired_compare(b, a, test=name)
        assert ab.p_value == ba.p_value
        assert 0.0 <= ab.p_value <= 1.0


@given(st.integers(min_value=2, max_value=40), st.randoms(use_true_random=False))
def test_t_closed_form_matches_scipy_cdf(df, rng):
    t = rng.uniform(-6.0, 6.0)
    assert t_twosided_p(t, df) == pytest.approx(
        2.0 * scipy.stats.t.sf(abs(t), df), abs=1e-12)

import re

from hypothesis import given, strategies as st

from orgaze.annotations import TaskInterval
from orgaze.intervals import Interval
from orgaze.report import (
    PLUS_MINUS,
    format_mean_sd,
    render_csv,
    render_json,
    text_table,
    timeline_rows,
    timeline_svg,
)
from orgaze.segmentation import GazeEvent


def event(start, end):
    return GazeEvent(interval=Interval(start, end), n_frames=1)


def task(behavior, start, end):
    return TaskInterval(behavior=behavior, subject="anesthesiologist",
                        interval=Interval(start, end))


# -- cells and tables --------------------------------------------------


def test_format_mean_sd_percent():
    assert format_mean_sd(89.224, 1.257, percent=True) == "89.22%±1.26%"


def test_format_mean_sd_plain():
    assert format_mean_sd(0.87, 0.02) == "0.87±0.02"


def test_format_mean_sd_markers():
    assert format_mean_sd(None, None) == "n/a"
    assert format_mean_sd(2.0, None) == "2.00"
    assert format_mean_sd(4.59, 1.0, digits=1) == "4.6±1.0"


def test_text_table_layout():
    out = text_table(["metric", "value"], [["frequency", "14.0"],
                                           ["total", "21.42"]])
    lines = out.splitlines()
    assert lines[0].startswith("metric")
    assert set(lines[1]) == {"-", " "}
    assert lines[2].startswith("frequency  14.0")
    assert out.endswith("\n")


def test_render_csv_cells():
    out = render_csv(["a", "b", "c", "d"], [[1.5, None, True, "x"]])
    assert out == b"a,b,c,d\n1.5,,true,x\n"


def test_render_csv_uses_repr_floats():
    out = render_csv(["v"], [[0.1 + 0.2]])
    assert out == b"v\n0.30000000000000004\n"


def test_render_json_is_sorted_and_newline_terminated():
    out = render_json({"b": 1, "a": [1.5, None]})
    assert out == b'{\n  "a": [\n    1.5,\n    null\n  ],\n  "b": 1\n}\n'


@given(st.lists(st.lists(st.integers(min_value=0, max_value=999),
                         min_size=2, max_size=2), max_size=5))
def test_render_csv_deterministic(rows):
    a = render_csv(["x", "y"], rows)
    b = render_csv(["x", "y"], rows)
    assert a == b


# -- timeline ----------------------------------------------------------


def test_timeline_rows_gaze_first_then_sorted_behaviors():
    rows = timeline_rows(
        [event(1.0, 2.0), event(5.0, 6.0)],
        [task("Ventilation", 10.0, 20.0), task("Airway", 0.0, 4.0),
         task("Airway", 6.0, 8.0)],
    )
    assert rows == [
        ("gaze", 1.0, 2.0),
        ("gaze", 5.0, 6.0),
        ("Airway", 0.0, 4.0),
        ("Airway", 6.0, 8.0),
        ("Ventilation", 10.0, 20.0),
    ]


def test_timeline_svg_gaze_track_only_for_empty_annotations():
    svg = timeline_svg([event(1.0, 2.0)], [], Interval(0.0, 10.0)).decode()
    assert svg.count("<text x=\"8\"") == 1  # one track label: gaze
    assert ">gaze</text>" in svg


def test_timeline_svg_three_tasks_three_bars():
    tasks = [task("A", 0.0, 10.0), task("B", 20.0, 40.0), task("C", 50.0, 90.0)]
    svg = timeline_svg([], tasks, Interval(0.0, 100.0)).decode()
    bars = re.findall(r'<rect x="([\d.]+)" y="\d+" width="([\d.]+)" height="18"', svg)
    assert len(bars) == 3
    # exact endpoints: x = 170 + 810 * t / 100
    for (x, w), t in zip(bars, tasks):
        x0 = 170 + 810 * t.interval.start / 100
        x1 = 170 + 810 * t.interval.end / 100
        assert float(x) == float(f"{x0:.2f}")
        assert float(w) == float(f"{x1 - x0:.2f}")


def test_timeline_svg_overlapping_behaviors_stack_without_truncation():
    tasks = [task("A", 0.0, 60.0), task("B", 30.0, 90.0)]
    svg = timeline_svg([], tasks, Interval(0.0, 100.0)).decode()
    bars = re.findall(r'<rect x="([\d.]+)" y="(\d+)" width="([\d.]+)" height="18"', svg)
    assert len(bars) == 2
    (xa, ya, wa), (xb, yb, wb) = bars
    assert ya != yb  # separate rows, one per behavior
    assert float(wa) == float(f"{810 * 60 / 100:.2f}")  # full width kept
    assert float(wb) == float(f"{810 * 60 / 100:.2f}")


def test_timeline_svg_clips_to_phase_and_escapes_labels():
    svg = timeline_svg([], [task("A<&>", -10.0, 300.0)],
                       Interval(0.0, 100.0)).decode()
    assert "A&lt;&amp;&gt;" in svg
    bars = re.findall(r'<rect x="([\d.]+)" y="\d+" width="([\d.]+)" height="18"', svg)
    assert len(bars) == 1
    x, w = bars[0]
    assert float(x) == 170.0
    assert float(w) == 810.0


def test_timeline_svg_deterministic():
    args = ([event(1.0, 2.0)], [task("A", 0.0, 5.0)], Interval(0.0, 10.0))
    assert timeline_svg(*args) == timeline_svg(*args)

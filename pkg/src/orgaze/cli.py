"""Command-line front end.

Subcommands:
  analyze   one session -> events, visual-attention metrics, task overlap
  compare   framework vs human coding across sessions, paired statistics
  evaluate  frame-level agreement against labels with k-fold CV
  timeline  SVG + CSV timeline of gaze events and coded tasks
  synth     generate a synthetic session with ground truth
  validate  hygiene report for a prediction log

Exit codes: 0 success; 2 unreadable/malformed input (and usage
errors); 3 invalid configuration or values. Input files are read and
all results computed before the first output file is opened, so a
failing run leaves no partial outputs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Any, Sequence

from .annotations import TaskInterval, load_annotations, pair_state_events
from .errors import ConfigError, EmptyLog, MalformedRow, OrgazeError, ParseError
from .evaluation import cross_validate, frame_metrics
from .frame_log import SessionFrames, load_frame_log, serialize_frame_log, validate_session
from .fusion import FusionConfig, decide_all, decide_session
from .intervals import Interval
from .metrics import (
    ComparisonResult,
    paired_compare,
    task_overlap,
    va_summary,
    windowed_frequency,
)
from .report import format_mean_sd, render_csv, render_json, text_table, timeline_rows, timeline_svg
from .segmentation import GazeEvent, SegConfig, segment
from .synth import ConfidenceModel, SynthConfig, TaskSpec, generate, truth_dict

DEFAULT_GAZE_BEHAVIOR = "Monitor interaction"

CONFIG_ENV = "ORGAZE_CONFIG"

# Flag defaults that a config file may override, with their types.
_CONFIG_KEYS: dict[str, type] = {
    "onfocus_threshold": float,
    "in_frame_threshold": float,
    "aggregation": str,
    "max_gap": float,
    "min_duration": float,
    "format": str,
    "out_dir": str,
    "gaze_behavior": str,
    "behavior": str,
}


def _env_defaults() -> dict[str, Any]:
    """Defaults from the JSON file named by ORGAZE_CONFIG, if set.

    Keys are the underscore forms of the flags in _CONFIG_KEYS; unknown
    keys are rejected so typos fail loudly instead of being ignored.
    """
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    if not os.path.isfile(path):
        raise ConfigError(f"{CONFIG_ENV} points at a missing file: {path}")
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    out: dict[str, Any] = {}
    for key, value in data.items():
        caster = _CONFIG_KEYS.get(key)
        if caster is None:
            raise ConfigError(f"config {path}: unknown key {key!r} "
                              f"(accepted: {sorted(_CONFIG_KEYS)})")
        try:
            out[key] = caster(value)
        except (TypeError, ValueError):
            raise ConfigError(
                f"config {path}: bad value for {key!r}: {value!r}"
            ) from None
    return out


def _require_file(path: str) -> str:
    if not os.path.isfile(path):
        raise ConfigError(f"input file not found: {path}")
    return path


def _write(out_dir: str, name: str, data: bytes) -> str:
    path = os.path.join(out_dir, name)
    with open(path, "wb") as fh:
        fh.write(data)
    return path


def _fusion_config(args) -> FusionConfig:
    try:
        return FusionConfig(
            onfocus_threshold=args.onfocus_threshold,
            in_frame_threshold=args.in_frame_threshold,
            aggregation=args.aggregation,
            tracked_face_id=args.tracked_face_id,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _seg_config(args) -> SegConfig:
    try:
        return SegConfig(max_gap=args.max_gap, min_duration=args.min_duration)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _phase(session: SessionFrames, args) -> Interval:
    period = 1.0 / session.fps_nominal
    start = args.phase_start if args.phase_start is not None else session.first_timestamp
    end = args.phase_end if args.phase_end is not None else session.last_timestamp + period
    try:
        phase = Interval(start, end)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if phase.duration <= 0:
        raise ConfigError(f"phase [{start}, {end}) has no duration")
    return phase


def _formats(args) -> set[str]:
    picked = {f.strip() for f in args.format.split(",") if f.strip()}
    unknown = picked - {"csv", "json"}
    if unknown:
        raise ConfigError(f"unknown output format(s) {sorted(unknown)}")
    if not picked:
        raise ConfigError("no output format selected")
    return picked


def _split_annotations(
    paired: list[TaskInterval], gaze_behavior: str, camera_id: str
) -> tuple[list[TaskInterval], list[TaskInterval]]:
    """(human gaze intervals, task intervals). When any gaze row carries
    a modifier, only rows whose modifier names this camera count."""
    gaze = [ti for ti in paired if ti.behavior == gaze_behavior]
    if any(ti.modifier for ti in gaze):
        gaze = [ti for ti in gaze if ti.modifier == camera_id]
    tasks = [ti for ti in paired if ti.behavior != gaze_behavior]
    return gaze, tasks


def _add_frames_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--frames", required=True, help="prediction log (JSONL)")
    p.add_argument("--frames-format", choices=("jsonl", "csv"), default="jsonl",
                   help="prediction log format (default jsonl)")


def _add_fusion_args(p: argparse.ArgumentParser, d: dict[str, Any]) -> None:
    p.add_argument("--onfocus-threshold", type=float,
                   default=d.get("onfocus_threshold", 0.72),
                   help="onfocus confidence cutoff, inclusive (default 0.72)")
    p.add_argument("--in-frame-threshold", type=float,
                   default=d.get("in_frame_threshold", 0.5),
                   help="in-frame attention gate (default 0.5)")
    p.add_argument("--aggregation", choices=("any_face", "largest_face", "tracked_subject"),
                   default=d.get("aggregation", "any_face"))
    p.add_argument("--tracked-face-id", default=None,
                   help="face id for --aggregation tracked_subject")


def _add_seg_args(p: argparse.ArgumentParser, d: dict[str, Any]) -> None:
    p.add_argument("--max-gap", type=float, default=d.get("max_gap", 0.25),
                   help="merge events separated by gaps up to this many seconds")
    p.add_argument("--min-duration", type=float, default=d.get("min_duration", 0.30),
                   help="drop merged events shorter than this many seconds")


def _add_phase_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--phase-start", type=float, default=None)
    p.add_argument("--phase-end", type=float, default=None)


def _add_out_args(p: argparse.ArgumentParser, d: dict[str, Any]) -> None:
    p.add_argument("--out-dir", default=d.get("out_dir", "."),
                   help="output directory (created if absent)")
    p.add_argument("--format", default=d.get("format", "csv,json"),
                   help="comma list of output formats: csv,json")


# -- analyze -----------------------------------------------------------


def _events_csv(events: list[GazeEvent]) -> bytes:
    return render_csv(
        ("start", "end", "duration", "n_frames", "mean_confidence"),
        [(e.start, e.end, e.duration, e.n_frames, e.mean_confidence)
         for e in events],
    )


def _va_csv(metrics) -> bytes:
    return render_csv(
        ("frequency_per_5min", "mean_duration_s", "sd_duration_s",
         "total_time_pct", "n_events", "phase_start", "phase_end"),
        [(metrics.frequency_per_5min, metrics.mean_duration_s,
          metrics.sd_duration_s, metrics.total_time_pct, metrics.n_events,
          metrics.phase.start, metrics.phase.end)],
    )


def _cmd_analyze(args) -> int:
    formats = _formats(args)
    frames_path = _require_file(args.frames)
    ann_path = _require_file(args.annotations) if args.annotations else None

    session = load_frame_log(frames_path, format=args.frames_format)
    fusion_cfg = _fusion_config(args)
    seg_cfg = _seg_config(args)
    phase = _phase(session, args)

    events = segment(decide_session(session, fusion_cfg), seg_cfg)
    metrics = va_summary(events, phase)

    overlap = None
    ann_warnings: list[str] = []
    if ann_path is not None:
        parsed = load_annotations(ann_path)
        ann_warnings = parsed.warnings
        session_end = session.last_timestamp + 1.0 / session.fps_nominal
        paired = pair_state_events(parsed.events, session_end=session_end)
        _, tasks = _split_annotations(paired, args.gaze_behavior, session.camera_id)
        if tasks:
            overlap = task_overlap(events, tasks)

    windows = None
    if args.windowed:
        windows = windowed_frequency(events, phase,
                                     window_s=args.window, step_s=args.step)

    os.makedirs(args.out_dir, exist_ok=True)
    written: list[str] = []
    if "csv" in formats:
        written.append(_write(args.out_dir, "events.csv", _events_csv(events)))
        written.append(_write(args.out_dir, "va_metrics.csv", _va_csv(metrics)))
        if overlap is not None:
            written.append(_write(args.out_dir, "task_overlap.csv", render_csv(
                ("behavior", "task_time_s", "overlap_time_s", "overlap_pct"),
                [(o.behavior, o.task_time_s, o.overlap_time_s, o.overlap_pct)
                 for o in overlap.values()],
            )))
        if windows is not None:
            written.append(_write(args.out_dir, "windowed_frequency.csv", render_csv(
                ("window_start", "window_end", "frequency_per_5min"),
                [(w.start, w.end, f) for w, f in windows],
            )))
    if "json" in formats:
        payload: dict[str, Any] = {
            "session_id": session.session_id,
            "camera_id": session.camera_id,
            **metrics.to_dict(),
        }
        if overlap is not None:
            payload["task_overlap"] = {
                name: {"task_time_s": o.task_time_s,
                       "overlap_time_s": o.overlap_time_s,
                       "overlap_pct": o.overlap_pct}
                for name, o in overlap.items()
            }
        written.append(_write(args.out_dir, "va_metrics.json", render_json(payload)))

    for warning in ann_warnings:
        print(f"warning: {warning}", file=sys.stderr)
    rows = [
        ("events", str(metrics.n_events)),
        ("frequency / 5 min", f"{metrics.frequency_per_5min:.2f}"),
        ("mean duration (s)", format_mean_sd(metrics.mean_duration_s,
                                             metrics.sd_duration_s)),
        ("total time", f"{metrics.total_time_pct:.2f}%"),
    ]
    print(text_table(("metric", "value"), rows), end="")
    for path in written:
        print(f"wrote {path}")
    return 0


# -- compare -----------------------------------------------------------

_COMPARE_METRICS = ("frequency_per_5min", "mean_duration_s", "total_time_pct")


def _metric_value(metrics, name: str) -> float | None:
    return getattr(metrics, name)


def _cmd_compare(args) -> int:
    if not args.pair or len(args.pair) < 2:
        raise ConfigError("compare needs at least two --pair FRAMES ANNOTATIONS")
    formats = _formats(args)
    for frames_path, ann_path in args.pair:
        _require_file(frames_path)
        _require_file(ann_path)

    fusion_cfg = _fusion_config(args)
    seg_cfg = _seg_config(args)

    groups: dict[str, list[tuple[Any, Any]]] = {}
    for frames_path, ann_path in args.pair:
        session = load_frame_log(frames_path, format=args.frames_format)
        parsed = load_annotations(ann_path)
        period = 1.0 / session.fps_nominal
        session_end = session.last_timestamp + period
        phase = Interval(session.first_timestamp, session_end)
        paired = pair_state_events(parsed.events, session_end=session_end)
        human_gaze, _ = _split_annotations(paired, args.behavior, session.camera_id)

        framework_events = segment(decide_session(session, fusion_cfg), seg_cfg)
        fw = va_summary(framework_events, phase)
        hu = va_summary(human_gaze, phase)
        groups.setdefault(session.camera_id, []).append((fw, hu))

    csv_rows: list[tuple] = []
    payload: dict[str, Any] = {}
    table_rows: list[tuple] = []
    for camera_id in sorted(groups):
        pairs = groups[camera_id]
        payload[camera_id] = {}
        for metric in _COMPARE_METRICS:
            fw_vals, hu_vals = [], []
            for fw, hu in pairs:
                f_v = _metric_value(fw, metric)
                h_v = _metric_value(hu, metric)
                if f_v is None or h_v is None:
                    continue
                fw_vals.append(f_v)
                hu_vals.append(h_v)
            entry: dict[str, Any] = {"framework": fw_vals, "human": hu_vals,
                                     "n_pairs": len(fw_vals)}
            p_t: float | None = None
            p_w: float | None = None
            if len(fw_vals) >= 2:
                res_t = paired_compare(fw_vals, hu_vals, test="paired_t")
                res_w = paired_compare(fw_vals, hu_vals, test="wilcoxon_signed_rank")
                p_t, p_w = res_t.p_value, res_w.p_value
                entry["paired_t"] = {"statistic": res_t.statistic, "p_value": p_t}
                entry["wilcoxon_signed_rank"] = {"statistic": res_w.statistic,
                                                 "p_value": p_w}
                fw_cell = format_mean_sd(res_t.mean_a, res_t.sd_a)
                hu_cell = format_mean_sd(res_t.mean_b, res_t.sd_b)
            elif fw_vals:
                fw_cell = format_mean_sd(fw_vals[0], None)
                hu_cell = format_mean_sd(hu_vals[0], None)
            else:
                fw_cell = hu_cell = "n/a"
            payload[camera_id][metric] = entry
            csv_rows.append((camera_id, metric, len(fw_vals), fw_cell, hu_cell,
                             p_t, p_w))
            table_rows.append((camera_id, metric, str(len(fw_vals)), fw_cell,
                               hu_cell,
                               "n/a" if p_t is None else f"{p_t:.4f}",
                               "n/a" if p_w is None else f"{p_w:.4f}"))

    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    if "csv" in formats:
        written.append(_write(args.out_dir, "compare.csv", render_csv(
            ("camera_id", "metric", "n_pairs", "framework_mean_sd",
             "human_mean_sd", "p_paired_t", "p_wilcoxon"),
            csv_rows,
        )))
    if "json" in formats:
        written.append(_write(args.out_dir, "compare.json", render_json(payload)))

    print(text_table(
        ("camera", "metric", "n", "framework", "human", "p(t)", "p(W)"),
        table_rows,
    ), end="")
    for path in written:
        print(f"wrote {path}")
    return 0


# -- evaluate ----------------------------------------------------------


def parse_labels(source) -> list[tuple[int, bool]]:
    """frame_index,label CSV -> sorted (frame_index, onfocus) pairs.

    Accepted labels: onfocus/out_of_focus/true/false/1/0.
    """
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    if "frame_index" not in header or "label" not in header:
        raise MalformedRow(1, "labels header must contain frame_index,label")
    out: dict[int, bool] = {}
    for line_no, row in enumerate(reader, 2):
        try:
            fi = int(row["frame_index"])
        except (TypeError, ValueError):
            raise MalformedRow(line_no,
                               f"bad frame_index {row.get('frame_index')!r}") from None
        raw_label = (row.get("label") or "").strip().lower()
        if raw_label in ("onfocus", "true", "1"):
            value = True
        elif raw_label in ("out_of_focus", "false", "0"):
            value = False
        else:
            raise MalformedRow(line_no, f"unknown label {raw_label!r}")
        if fi in out:
            raise MalformedRow(line_no, f"duplicate frame_index {fi}")
        out[fi] = value
    if not out:
        raise EmptyLog("labels file has no rows")
    return sorted(out.items())


def _cmd_evaluate(args) -> int:
    formats = _formats(args)
    frames_path = _require_file(args.frames)
    labels_path = _require_file(args.labels)

    session = load_frame_log(frames_path, format=args.frames_format)
    with open(labels_path, "rb") as fh:
        labels = parse_labels(fh)
    fusion_cfg = _fusion_config(args)
    decisions = decide_all(session, fusion_cfg)
    by_index = {d.frame_index: d.onfocus for d in decisions}
    items: list[tuple[bool, bool]] = []
    for fi, truth in labels:
        if fi not in by_index:
            raise MalformedRow(None, f"label references unknown frame_index {fi}")
        items.append((by_index[fi], truth))

    overall_acc, overall_f1 = frame_metrics([p for p, _ in items],
                                            [t for _, t in items])

    def scorer(held: Sequence[tuple[bool, bool]]):
        return frame_metrics([p for p, _ in held], [t for _, t in held])

    try:
        report = cross_validate(items, scorer, k=args.k, seed=args.seed)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    dataset = args.dataset_name or session.session_id
    acc_cell = format_mean_sd(
        report.mean_accuracy * 100.0,
        None if report.sd_accuracy is None else report.sd_accuracy * 100.0,
        percent=True,
    )
    f1_cell = format_mean_sd(report.mean_f1, report.sd_f1)
    headers = ("model", "dataset", "accuracy", "f1_score")
    row = ("fused_pipeline", dataset, acc_cell, f1_cell)

    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    if "csv" in formats:
        written.append(_write(args.out_dir, "evaluation.csv",
                              render_csv(headers, [row])))
    if "json" in formats:
        payload = {
            "session_id": session.session_id,
            "dataset": dataset,
            "n_labeled_frames": len(items),
            "overall_accuracy": overall_acc,
            "overall_f1": overall_f1,
            "cv": report.to_dict(),
        }
        written.append(_write(args.out_dir, "evaluation.json", render_json(payload)))

    print(text_table(headers, [row]), end="")
    print(f"overall: accuracy {overall_acc:.4f}, "
          f"f1 {'n/a' if overall_f1 is None else f'{overall_f1:.4f}'} "
          f"on {len(items)} labeled frames")
    for path in written:
        print(f"wrote {path}")
    return 0


# -- timeline ----------------------------------------------------------


def _cmd_timeline(args) -> int:
    frames_path = _require_file(args.frames)
    ann_path = _require_file(args.annotations) if args.annotations else None

    session = load_frame_log(frames_path, format=args.frames_format)
    fusion_cfg = _fusion_config(args)
    seg_cfg = _seg_config(args)
    phase = _phase(session, args)
    events = segment(decide_session(session, fusion_cfg), seg_cfg)

    tasks: list[TaskInterval] = []
    if ann_path is not None:
        parsed = load_annotations(ann_path)
        session_end = session.last_timestamp + 1.0 / session.fps_nominal
        tasks = pair_state_events(parsed.events, session_end=session_end)

    title = f"{session.session_id} / {session.camera_id}"
    os.makedirs(args.out_dir, exist_ok=True)
    svg_path = _write(args.out_dir, "timeline.svg",
                      timeline_svg(events, tasks, phase, title=title))
    csv_path = _write(args.out_dir, "timeline.csv", render_csv(
        ("track", "start", "end"), timeline_rows(events, tasks),
    ))
    print(f"wrote {svg_path}")
    print(f"wrote {csv_path}")
    return 0


# -- synth -------------------------------------------------------------


def _cmd_synth(args) -> int:
    tasks = []
    for behavior, start, end in args.task or ():
        try:
            tasks.append(TaskSpec(behavior=behavior, start=float(start),
                                  end=float(end)))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    try:
        model = ConfidenceModel(onfocus_threshold=args.onfocus_threshold,
                                in_frame_threshold=args.in_frame_threshold,
                                margin=args.margin)
        config = SynthConfig(
            seed=args.seed,
            phase_duration_s=args.phase_duration,
            fps=args.fps,
            event_rate_per_5min=args.event_rate,
            mean_event_duration_s=args.mean_duration,
            duration_jitter_s=args.duration_jitter,
            flip_probability=args.flip_probability,
            confidence_model=model,
            n_distractor_faces=args.distractors,
            task_script=tuple(tasks),
            align_to_grid=args.align_to_grid,
            session_id=args.session_id,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    session = generate(config)
    os.makedirs(args.out_dir, exist_ok=True)
    paths = [
        _write(args.out_dir, "frames.jsonl", serialize_frame_log(session.frames)),
        _write(args.out_dir, "annotations.csv", session.annotations_csv),
        _write(args.out_dir, "truth.json", render_json(truth_dict(session))),
    ]
    for path in paths:
        print(f"wrote {path}")
    print(f"{len(session.truth_events)} events over "
          f"{session.phase.duration:.1f} s at {config.fps:g} fps")
    return 0


# -- validate ----------------------------------------------------------


def _cmd_validate(args) -> int:
    frames_path = _require_file(args.frames)
    session = load_frame_log(frames_path, format=args.frames_format)
    report = validate_session(session)
    if args.json:
        sys.stdout.write(render_json(report.to_dict()).decode("utf-8"))
        return 0
    rows = [
        ("session", report.session_id),
        ("camera", report.camera_id),
        ("frames", str(report.n_frames)),
        ("duration (s)", f"{report.duration_s:.3f}"),
        ("nominal fps", f"{report.fps_nominal:g}"),
        ("gaps", str(report.gap_count)),
        ("zero-face fraction", f"{report.zero_face_fraction:.4f}"),
    ]
    for name, summary in (
        ("detector confidence", report.detector_confidence),
        ("in-frame attention", report.in_frame_attention),
        ("onfocus confidence", report.onfocus_confidence),
    ):
        if summary.n:
            rows.append((name, f"n={summary.n} min={summary.min:.3f} "
                               f"mean={summary.mean:.3f} max={summary.max:.3f}"))
        else:
            rows.append((name, "n=0"))
    print(text_table(("field", "value"), rows), end="")
    for warning in report.warnings:
        print(f"warning: {warning}")
    return 0


# -- parser ------------------------------------------------------------


def build_parser(defaults: dict[str, Any] | None = None) -> argparse.ArgumentParser:
    d = defaults or {}
    parser = argparse.ArgumentParser(
        prog="orgaze",
        description="Visual-attention analytics for monitor-mounted webcam "
                    "gaze prediction logs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="events, metrics and task overlap for one session")
    _add_frames_arg(p)
    p.add_argument("--annotations", default=None, help="observation CSV")
    p.add_argument("--gaze-behavior", default=d.get("gaze_behavior", DEFAULT_GAZE_BEHAVIOR),
                   help="behavior name carrying human-coded monitor gaze")
    _add_fusion_args(p, d)
    _add_seg_args(p, d)
    _add_phase_args(p)
    p.add_argument("--windowed", action="store_true",
                   help="also write sliding-window frequencies")
    p.add_argument("--window", type=float, default=300.0,
                   help="sliding window length in seconds (default 300)")
    p.add_argument("--step", type=float, default=60.0,
                   help="sliding window step in seconds (default 60)")
    _add_out_args(p, d)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("compare", help="framework vs human coding, paired statistics")
    p.add_argument("--pair", nargs=2, action="append",
                   metavar=("FRAMES", "ANNOTATIONS"),
                   help="one session: prediction log + observation CSV")
    p.add_argument("--frames-format", choices=("jsonl", "csv"), default="jsonl")
    p.add_argument("--behavior", default=d.get("behavior", DEFAULT_GAZE_BEHAVIOR),
                   help="behavior name carrying human-coded monitor gaze")
    _add_fusion_args(p, d)
    _add_seg_args(p, d)
    _add_out_args(p, d)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("evaluate", help="frame-level agreement against labels")
    _add_frames_arg(p)
    p.add_argument("--labels", required=True, help="frame_index,label CSV")
    p.add_argument("--k", type=int, default=5, help="cross-validation folds")
    p.add_argument("--seed", type=int, default=0, help="fold shuffle seed")
    p.add_argument("--dataset-name", default=None)
    _add_fusion_args(p, d)
    _add_out_args(p, d)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("timeline", help="timeline SVG and CSV")
    _add_frames_arg(p)
    p.add_argument("--annotations", default=None)
    _add_fusion_args(p, d)
    _add_seg_args(p, d)
    _add_phase_args(p)
    p.add_argument("--out-dir", default=d.get("out_dir", "."))
    p.set_defaults(func=_cmd_timeline)

    p = sub.add_parser("synth", help="generate a synthetic session with truth")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--phase-duration", type=float, default=300.0)
    p.add_argument("--fps", type=float, default=25.0)
    p.add_argument("--event-rate", type=float, default=14.0,
                   help="gaze events per 5 minutes")
    p.add_argument("--mean-duration", type=float, default=4.59,
                   help="mean event duration in seconds")
    p.add_argument("--duration-jitter", type=float, default=0.0)
    p.add_argument("--flip-probability", type=float, default=0.0)
    p.add_argument("--distractors", type=int, default=0)
    p.add_argument("--onfocus-threshold", type=float, default=0.72)
    p.add_argument("--in-frame-threshold", type=float, default=0.5)
    p.add_argument("--margin", type=float, default=0.05)
    p.add_argument("--align-to-grid", action="store_true",
                   help="snap event endpoints to the frame grid")
    p.add_argument("--task", nargs=3, action="append",
                   metavar=("BEHAVIOR", "START", "END"),
                   help="embed a task interval (repeatable)")
    p.add_argument("--session-id", default=None)
    p.add_argument("--out-dir", default=d.get("out_dir", "."))
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("validate", help="hygiene report for a prediction log")
    _add_frames_arg(p)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser(_env_defaults())
    except OrgazeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OrgazeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

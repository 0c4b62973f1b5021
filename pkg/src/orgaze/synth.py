"""Deterministic synthetic sessions with known ground truth.

The generator lays out non-overlapping gaze events inside a phase,
renders them to a per-frame prediction log whose confidences sit a
safe margin away from every decision boundary, and emits a matching
observation CSV. With flip_probability=0 the fusion + segmentation
pipeline must recover the truth exactly (up to one frame period at
event edges); that closed loop is the backbone of the test suite.

RNG discipline: a fixed number of draws per frame regardless of state,
so two configs differing only in flip_probability render identical
streams except at flipped frames.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, replace

from .annotations import TaskInterval
from .errors import InfeasibleConfig
from .frame_log import FaceObservation, FrameRecord, SessionFrames
from .fusion import FusionConfig, decide_frame
from .intervals import Interval
from .segmentation import GazeEvent

SUBJECT_ID = "subject"
SUBJECT_NAME = "anesthesiologist"
GAZE_BEHAVIOR = "Monitor interaction"


@dataclass(frozen=True)
class ConfidenceModel:
    """Decision boundaries plus the margin kept clear around them."""

    onfocus_threshold: float = 0.72
    in_frame_threshold: float = 0.5
    margin: float = 0.05

    def __post_init__(self):
        if not (0.0 < self.onfocus_threshold < 1.0):
            raise ValueError(f"onfocus_threshold {self.onfocus_threshold} outside (0, 1)")
        if not (0.0 < self.in_frame_threshold < 1.0):
            raise ValueError(f"in_frame_threshold {self.in_frame_threshold} outside (0, 1)")
        limit = min(self.onfocus_threshold, 1.0 - self.onfocus_threshold,
                    self.in_frame_threshold, 1.0 - self.in_frame_threshold)
        if not (0.0 < self.margin < limit):
            raise ValueError(
                f"margin {self.margin} must be positive and below {limit} "
                "so every sampling band is non-degenerate"
            )


@dataclass(frozen=True)
class TaskSpec:
    """One scripted task interval to embed in the session."""

    behavior: str
    start: float
    end: float
    subject: str = SUBJECT_NAME
    modifier: str | None = None

    def __post_init__(self):
        if not self.behavior:
            raise ValueError("behavior must be non-empty")
        if not (0.0 <= self.start < self.end):
            raise ValueError(f"need 0 <= start < end, got [{self.start}, {self.end})")


@dataclass(frozen=True)
class SynthConfig:
    seed: int
    phase_duration_s: float = 300.0
    fps: float = 25.0
    event_rate_per_5min: float = 14.0
    mean_event_duration_s: float = 4.59
    duration_jitter_s: float = 0.0
    flip_probability: float = 0.0
    confidence_model: ConfidenceModel = ConfidenceModel()
    n_distractor_faces: int = 0
    task_script: tuple[TaskSpec, ...] = ()
    min_separation_s: float = 0.5
    min_event_duration_s: float = 0.4
    align_to_grid: bool = False
    camera_id: str = "patient_monitor"
    session_id: str | None = None

    def __post_init__(self):
        if self.phase_duration_s <= 0:
            raise ValueError("phase_duration_s must be positive")
        if self.fps <= 0:
            raise ValueError("fps must be positive")
        if round(self.phase_duration_s * self.fps) < 2:
            raise ValueError("phase must cover at least 2 frames")
        if self.event_rate_per_5min < 0:
            raise ValueError("event_rate_per_5min must be >= 0")
        if self.mean_event_duration_s <= 0:
            raise ValueError("mean_event_duration_s must be positive")
        if self.duration_jitter_s < 0:
            raise ValueError("duration_jitter_s must be >= 0")
        if not (0.0 <= self.flip_probability < 1.0):
            raise ValueError("flip_probability outside [0, 1)")
        if self.n_distractor_faces < 0:
            raise ValueError("n_distractor_faces must be >= 0")
        period = 1.0 / self.fps
        # Two periods guarantee at least one rendered frame per event
        # and at least one false frame in every inter-event gap.
        if self.min_event_duration_s < 2 * period:
            raise ValueError(
                f"min_event_duration_s must be >= 2/fps = {2 * period}"
            )
        if self.min_separation_s < 2 * period:
            raise ValueError(f"min_separation_s must be >= 2/fps = {2 * period}")

    @property
    def n_events(self) -> int:
        return int(self.event_rate_per_5min * self.phase_duration_s / 300.0 + 0.5)


@dataclass(frozen=True)
class SynthSession:
    config: SynthConfig
    phase: Interval
    truth_events: tuple[GazeEvent, ...]
    truth_tasks: tuple[TaskInterval, ...]
    frames: SessionFrames
    annotations_csv: bytes


def _place_events(config: SynthConfig, rng: random.Random) -> list[tuple[float, float]]:
    n = config.n_events
    if n == 0:
        return []
    if n * config.mean_event_duration_s >= config.phase_duration_s:
        raise InfeasibleConfig(
            f"{n} events of mean {config.mean_event_duration_s} s cannot fit "
            f"a {config.phase_duration_s} s phase"
        )
    durations = [
        max(config.mean_event_duration_s
            + rng.uniform(-config.duration_jitter_s, config.duration_jitter_s),
            config.min_event_duration_s)
        for _ in range(n)
    ]
    sep = config.min_separation_s
    free = config.phase_duration_s - sum(durations) - (n - 1) * sep
    if free < 0:
        raise InfeasibleConfig(
            f"{n} events with separation {sep} s exceed the "
            f"{config.phase_duration_s} s phase by {-free} s"
        )
    # Cut the slack uniformly into n+1 parts; separation is guaranteed
    # by construction, no retry loop needed.
    cuts = sorted(rng.uniform(0.0, free) for _ in range(n))
    parts = [cuts[0]] + [cuts[i] - cuts[i - 1] for i in range(1, n)]
    events: list[tuple[float, float]] = []
    t = parts[0]
    for i, d in enumerate(durations):
        if i:
            t += sep + parts[i]
        events.append((t, t + d))
        t += d
    return events


def _snap_to_grid(
    events: list[tuple[float, float]], fps: float
) -> list[tuple[float, float]]:
    period = 1.0 / fps
    snapped = [(round(a * fps) / fps, round(b * fps) / fps) for a, b in events]
    for i, (a, b) in enumerate(snapped):
        if b - a < period - 1e-9:
            raise InfeasibleConfig("event collapsed when snapped to the frame grid")
        if i and a - snapped[i - 1][1] < period - 1e-9:
            raise InfeasibleConfig("events touch when snapped to the frame grid")
    return snapped


def generate(config: SynthConfig) -> SynthSession:
    """Build a session whose truth is known by construction."""
    rng = random.Random(config.seed)
    model = config.confidence_model
    fps = config.fps
    n_frames_total = round(config.phase_duration_s * fps)
    phase_end = n_frames_total / fps
    phase = Interval(0.0, phase_end)

    raw = _place_events(config, rng)
    if config.align_to_grid:
        raw = _snap_to_grid(raw, fps)
    truth_intervals = [Interval(a, b) for a, b in raw]

    for spec in config.task_script:
        if spec.end > phase_end + 1e-9:
            raise InfeasibleConfig(
                f"task {spec.behavior!r} ends at {spec.end}, past the phase "
                f"end {phase_end}"
            )

    # Per-frame truth and per-event frame counts in one sweep.
    truth_flags = [False] * n_frames_total
    counts = [0] * len(truth_intervals)
    ptr = 0
    for k in range(n_frames_total):
        t = k / fps
        while ptr < len(truth_intervals) and truth_intervals[ptr].end <= t:
            ptr += 1
        if ptr < len(truth_intervals) and truth_intervals[ptr].start <= t:
            truth_flags[k] = True
            counts[ptr] += 1

    gate = model.in_frame_threshold
    thr = model.onfocus_threshold
    m = model.margin
    frames: list[FrameRecord] = []
    for k in range(n_frames_total):
        flip_u = rng.random()
        coin_u = rng.random()
        a_u = rng.random()
        c_u = rng.random()
        d_u = rng.random()
        state = truth_flags[k] ^ (flip_u < config.flip_probability)
        conf: float | None
        if state:
            alpha = a_u * (gate - m)
            conf = thr + m + c_u * (1.0 - thr - m)
        elif coin_u < 0.5:
            alpha = gate + m + a_u * (1.0 - gate - m)
            conf = None
        else:
            alpha = a_u * (gate - m)
            conf = c_u * (thr - m)
        faces = [FaceObservation(
            bbox=(0.35, 0.2, 0.3, 0.4),
            detector_confidence=0.9 + 0.1 * d_u,
            in_frame_attention=alpha,
            onfocus_confidence=conf,
            face_id=SUBJECT_ID,
        )]
        for j in range(config.n_distractor_faces):
            da_u = rng.random()
            dd_u = rng.random()
            faces.append(FaceObservation(
                bbox=(0.02 + 0.17 * (j % 5), 0.05, 0.12, 0.18),
                detector_confidence=0.9 + 0.1 * dd_u,
                in_frame_attention=gate + m + da_u * (1.0 - gate - m),
                onfocus_confidence=None,
                face_id=f"distractor{j}",
            ))
        frames.append(FrameRecord(
            frame_index=k, timestamp=k / fps, faces=tuple(faces),
            camera_id=config.camera_id,
        ))

    truth_events = tuple(
        GazeEvent(interval=iv, n_frames=counts[i])
        for i, iv in enumerate(truth_intervals)
    )
    truth_tasks = tuple(
        TaskInterval(behavior=spec.behavior, subject=spec.subject,
                     interval=Interval(spec.start, spec.end),
                     modifier=spec.modifier)
        for spec in sorted(config.task_script,
                           key=lambda s: (s.start, s.end, s.behavior))
    )
    session_id = config.session_id or f"synth-{config.seed}"
    session = SessionFrames(
        session_id=session_id, camera_id=config.camera_id,
        fps_nominal=fps, frames=tuple(frames),
    )
    return SynthSession(
        config=config,
        phase=phase,
        truth_events=truth_events,
        truth_tasks=truth_tasks,
        frames=session,
        annotations_csv=_annotations_csv(config, truth_events, truth_tasks),
    )


def _annotations_csv(
    config: SynthConfig,
    events: tuple[GazeEvent, ...],
    tasks: tuple[TaskInterval, ...],
) -> bytes:
    rows: list[tuple[float, str, str, str, str]] = []
    for ev in events:
        rows.append((ev.start, SUBJECT_NAME, GAZE_BEHAVIOR, config.camera_id, "start"))
        rows.append((ev.end, SUBJECT_NAME, GAZE_BEHAVIOR, config.camera_id, "stop"))
    for task in tasks:
        rows.append((task.interval.start, task.subject, task.behavior,
                     task.modifier or "", "start"))
        rows.append((task.interval.end, task.subject, task.behavior,
                     task.modifier or "", "stop"))
    # Stops sort before starts at equal times so back-to-back intervals
    # of one behavior never read as nested.
    rows.sort(key=lambda r: (r[0], r[4] == "start", r[2], r[1]))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["time", "subject", "behavior", "modifier", "kind"])
    for time, subject, behavior, modifier, kind in rows:
        writer.writerow([repr(time), subject, behavior, modifier, kind])
    return buf.getvalue().encode("utf-8")


def truth_dict(session: SynthSession) -> dict:
    """The ground-truth record the synth CLI writes next to the log.

    This is the replay contract for downstream mock inference: enough
    to re-render an equivalent log without access to this package.
    """
    cfg = session.config
    model = cfg.confidence_model
    return {
        "schema_version": "1",
        "session_id": session.frames.session_id,
        "camera_id": session.frames.camera_id,
        "fps": cfg.fps,
        "phase": [session.phase.start, session.phase.end],
        "seed": cfg.seed,
        "align_to_grid": cfg.align_to_grid,
        "n_distractor_faces": cfg.n_distractor_faces,
        "thresholds": {
            "onfocus": model.onfocus_threshold,
            "in_frame": model.in_frame_threshold,
            "margin": model.margin,
        },
        "events": [
            {"start": e.start, "end": e.end, "n_frames": e.n_frames}
            for e in session.truth_events
        ],
        "tasks": [
            {"behavior": t.behavior, "subject": t.subject, "modifier": t.modifier,
             "start": t.interval.start, "end": t.interval.end}
            for t in session.truth_tasks
        ],
    }


def corrupt(
    frames: SessionFrames,
    flip_probability: float,
    seed: int,
    model: ConfidenceModel | None = None,
) -> SessionFrames:
    """Flip each frame's fused decision with probability flip_probability.

    Draws are per frame, so unflipped frames come through as the same
    objects. A frame with no faces cannot flip to onfocus (there is no
    face to carry the score); it stays false.
    """
    if not (0.0 <= flip_probability <= 1.0):
        raise ValueError(f"flip_probability {flip_probability} outside [0, 1]")
    if model is None:
        model = ConfidenceModel()
    fusion_cfg = FusionConfig(onfocus_threshold=model.onfocus_threshold,
                              in_frame_threshold=model.in_frame_threshold)
    gate, thr, m = model.in_frame_threshold, model.onfocus_threshold, model.margin
    rng = random.Random(seed)
    out: list[FrameRecord] = []
    for fr in frames.frames:
        flip_u = rng.random()
        a_u = rng.random()
        c_u = rng.random()
        if flip_u >= flip_probability:
            out.append(fr)
            continue
        if decide_frame(fr, fusion_cfg).onfocus:
            # Push every scored face below threshold; gated faces stay.
            new_faces = tuple(
                f if f.onfocus_confidence is None
                else replace(f, onfocus_confidence=c_u * (thr - m))
                for f in fr.faces
            )
        elif fr.faces:
            first = replace(fr.faces[0],
                            in_frame_attention=a_u * (gate - m),
                            onfocus_confidence=thr + m + c_u * (1.0 - thr - m))
            new_faces = (first,) + fr.faces[1:]
        else:
            out.append(fr)
            continue
        out.append(replace(fr, faces=new_faces))
    return SessionFrames(
        session_id=frames.session_id, camera_id=frames.camera_id,
        fps_nominal=frames.fps_nominal, frames=tuple(out), phase=frames.phase,
    )

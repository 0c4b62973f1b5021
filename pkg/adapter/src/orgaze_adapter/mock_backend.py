"""Mock backend: replays a synthetic truth script as model output.

The script is the truth.json written next to a synthetic session: it
names the session, camera, frame rate, analysis phase, RNG seed, and
the ground-truth gaze events. The mock renders one frame per grid
tick with a subject face whose scores land on the correct side of the
script's thresholds, so a downstream consumer recovers exactly the
scripted events. Scores are drawn from a seeded RNG inside
margin-separated bands; a fixed script always renders identical bytes.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

from .config import AdapterConfig
from .errors import SchemaVersionMismatch, VideoDecodeError
from .wire import SCHEMA_VERSION, face_obj, frame_line, metadata_line

SUBJECT_FACE_ID = "face0"


@dataclass(frozen=True)
class TruthScript:
    """The parts of a truth file the mock needs to replay it."""

    session_id: str
    camera_id: str
    fps: float
    phase_start: float
    phase_end: float
    seed: int
    events: tuple[tuple[float, float], ...]
    n_distractor_faces: int
    onfocus_threshold: float
    in_frame_threshold: float
    margin: float


def _bad(path: str, why: str) -> VideoDecodeError:
    return VideoDecodeError(f"mock script {path}: {why}")


def load_truth(path: str) -> TruthScript:
    """Parse and sanity-check a truth script."""
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise VideoDecodeError(f"cannot read mock script {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _bad(path, f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise _bad(path, "top level must be a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(version, SCHEMA_VERSION)
    try:
        phase = data["phase"]
        thresholds = data["thresholds"]
        script = TruthScript(
            session_id=str(data["session_id"]),
            camera_id=str(data["camera_id"]),
            fps=float(data["fps"]),
            phase_start=float(phase[0]),
            phase_end=float(phase[1]),
            seed=int(data["seed"]),
            events=tuple((float(ev["start"]), float(ev["end"]))
                         for ev in data["events"]),
            n_distractor_faces=int(data.get("n_distractor_faces", 0)),
            onfocus_threshold=float(thresholds["onfocus"]),
            in_frame_threshold=float(thresholds["in_frame"]),
            margin=float(thresholds["margin"]),
        )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise _bad(path, f"missing or malformed field: {exc!r}") from None

    if not math.isfinite(script.fps) or script.fps <= 0:
        raise _bad(path, f"fps {script.fps} must be positive")
    if script.phase_start < 0 or script.phase_end <= script.phase_start:
        raise _bad(path, f"phase [{script.phase_start}, {script.phase_end}) "
                         "must be non-negative and non-empty")
    if script.n_distractor_faces < 0:
        raise _bad(path, "n_distractor_faces is negative")
    gate, threshold, margin = (script.in_frame_threshold,
                               script.onfocus_threshold, script.margin)
    if margin < 0 or margin >= min(gate, 1.0 - gate, threshold, 1.0 - threshold):
        raise _bad(path, f"margin {margin} leaves no usable score bands for "
                         f"thresholds onfocus={threshold}, in_frame={gate}")
    previous_end = None
    for start, end in script.events:
        if not (script.phase_start <= start < end <= script.phase_end):
            raise _bad(path, f"event [{start}, {end}) outside the phase")
        if previous_end is not None and start < previous_end:
            raise _bad(path, f"event [{start}, {end}) overlaps its predecessor")
        previous_end = end
    return script


def render_log(config: AdapterConfig) -> bytes:
    """Render the complete frame log for a mock run."""
    if config.video is None:
        raise VideoDecodeError("mock backend needs a script file path")
    script = load_truth(config.video)
    fps = config.fps_override if config.fps_override is not None else script.fps
    n_frames = round((script.phase_end - script.phase_start) * fps)
    if n_frames < 1:
        raise _bad(config.video, f"phase too short for one frame at {fps} fps")

    gate = script.in_frame_threshold
    threshold = script.onfocus_threshold
    margin = script.margin
    rng = random.Random(script.seed)
    lines = [metadata_line(script.session_id, script.camera_id, fps)]

    event_i = 0
    for k in range(n_frames):
        t = script.phase_start + k / fps
        while event_i < len(script.events) and t >= script.events[event_i][1]:
            event_i += 1
        onfocus = (event_i < len(script.events)
                   and t >= script.events[event_i][0])

        # fixed draw count per frame keeps the stream aligned across edits
        branch_u = rng.random()
        attention_u = rng.random()
        confidence_u = rng.random()
        detector_u = rng.random()
        wobble_u = rng.random()

        if onfocus:
            in_frame = attention_u * (gate - margin)
            confidence = threshold + margin + confidence_u * (1.0 - threshold - margin)
        elif branch_u < 0.5:
            # attention target inside the scene; the scorer never ran
            in_frame = gate + margin + attention_u * (1.0 - gate - margin)
            confidence = None
        else:
            in_frame = attention_u * (gate - margin)
            confidence = confidence_u * (threshold - margin)

        faces = [face_obj(
            bbox=(0.36 + 0.04 * wobble_u, 0.22, 0.28, 0.38),
            det_conf=0.85 + 0.1 * detector_u,
            in_frame=in_frame,
            onfocus_conf=confidence,
            face_id=SUBJECT_FACE_ID,
        )]
        for j in range(script.n_distractor_faces):
            d_attention_u = rng.random()
            d_detector_u = rng.random()
            faces.append(face_obj(
                bbox=(0.03 + 0.18 * (j % 5), 0.06, 0.11, 0.17),
                det_conf=0.75 + 0.2 * d_detector_u,
                in_frame=gate + margin + d_attention_u * (1.0 - gate - margin),
                onfocus_conf=None,
                face_id=f"face{j + 1}",
            ))
        lines.append(frame_line(k, t, faces))
    return ("\n".join(lines) + "\n").encode("utf-8")

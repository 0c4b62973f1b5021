"""Per-frame onfocus decision: gate the onfocus score by the
in-frame-attention scalar, then threshold.

A face counts as looking at the camera-mounted monitor only when both
hold:

  1. its in-frame attention is below in_frame_threshold (attention is
     not claimed by an object visible in the scene), and
  2. its onfocus confidence exists and is >= onfocus_threshold
     (inclusive: a score exactly at threshold is onfocus).

A missing onfocus confidence always decides false: the upstream gate
already ruled the face out, there is no score to threshold.
"""

from __future__ import annotations

from dataclasses import dataclass

from .frame_log import FaceObservation, FrameRecord, SessionFrames
from .segmentation import BinarySeries

TRACKED_SUBJECT_MISSING = "tracked_subject_missing"

AGGREGATIONS = ("any_face", "largest_face", "tracked_subject")


@dataclass(frozen=True)
class FusionConfig:
    onfocus_threshold: float = 0.72
    in_frame_threshold: float = 0.5
    aggregation: str = "any_face"
    tracked_face_id: str | None = None

    def __post_init__(self):
        if not (0.0 <= self.onfocus_threshold <= 1.0):
            raise ValueError(f"onfocus_threshold {self.onfocus_threshold} outside [0, 1]")
        if not (0.0 <= self.in_frame_threshold <= 1.0):
            raise ValueError(f"in_frame_threshold {self.in_frame_threshold} outside [0, 1]")
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(f"aggregation must be one of {AGGREGATIONS}, "
                             f"got {self.aggregation!r}")
        if self.aggregation == "tracked_subject" and not self.tracked_face_id:
            raise ValueError("tracked_subject aggregation requires tracked_face_id")


@dataclass(frozen=True)
class FocusDecision:
    """The fused per-frame verdict.

    Invariant: onfocus implies winning_confidence >= the configured
    onfocus threshold, and winning_confidence is None iff no face
    passed the gate with a score.
    """

    frame_index: int
    onfocus: bool
    winning_face: str | None = None
    winning_confidence: float | None = None
    flags: tuple[str, ...] = ()


def decide_face(face: FaceObservation, config: FusionConfig) -> bool:
    """The core fusion rule for one face."""
    return (
        face.in_frame_attention < config.in_frame_threshold
        and face.onfocus_confidence is not None
        and face.onfocus_confidence >= config.onfocus_threshold
    )


def _pick_winner(
    candidates: list[tuple[int, FaceObservation]],
) -> tuple[int, FaceObservation]:
    # Highest confidence wins; ties break to larger bbox, then to the
    # earlier detection slot so reruns are reproducible.
    return max(candidates,
               key=lambda item: (item[1].onfocus_confidence, item[1].area, -item[0]))


def decide_frame(frame: FrameRecord, config: FusionConfig) -> FocusDecision:
    faces = list(enumerate(frame.faces))

    if config.aggregation == "tracked_subject":
        tracked = [(i, f) for i, f in faces if f.face_id == config.tracked_face_id]
        if not tracked:
            return FocusDecision(frame.frame_index, False,
                                 flags=(TRACKED_SUBJECT_MISSING,))
        faces = tracked
    elif config.aggregation == "largest_face":
        if not faces:
            return FocusDecision(frame.frame_index, False)
        best = max(faces, key=lambda item: (item[1].area, -item[0]))
        faces = [best]

    passing = [(i, f) for i, f in faces if decide_face(f, config)]
    if not passing:
        return FocusDecision(frame.frame_index, False)
    idx, winner = _pick_winner(passing)
    return FocusDecision(
        frame_index=frame.frame_index,
        onfocus=True,
        winning_face=winner.face_id,
        winning_confidence=winner.onfocus_confidence,
    )


def decide_session(session: SessionFrames, config: FusionConfig) -> BinarySeries:
    """Fuse every frame into a timestamped binary series.

    The parallel confidences channel carries the winning onfocus score
    for true samples (None for false ones) so downstream events can
    report a mean confidence.
    """
    samples = []
    confidences = []
    for frame in session.frames:
        decision = decide_frame(frame, config)
        samples.append((frame.timestamp, decision.onfocus))
        confidences.append(decision.winning_confidence)
    return BinarySeries(
        samples=tuple(samples),
        fps_nominal=session.fps_nominal,
        confidences=tuple(confidences),
    )


def decide_all(session: SessionFrames, config: FusionConfig) -> list[FocusDecision]:
    return [decide_frame(frame, config) for frame in session.frames]

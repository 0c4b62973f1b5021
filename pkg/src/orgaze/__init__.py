"""Visual-attention analytics for monitor-mounted webcam gaze
prediction logs: parse per-frame predictions, fuse them into onfocus
decisions, segment gaze events, and compare against human coding."""

from .annotations import (
    AnnotationEvent,
    EventKind,
    ParsedAnnotations,
    TaskInterval,
    load_annotations,
    pair_state_events,
    parse_annotations,
)
from .errors import ConfigError, OrgazeError, ParseError
from .evaluation import (
    AgreementReport,
    CrossReference,
    cross_reference,
    cross_validate,
    frame_metrics,
    split_dataset,
)
from .frame_log import (
    SCHEMA_VERSION,
    FaceObservation,
    FrameRecord,
    SessionFrames,
    ValidationReport,
    load_frame_log,
    parse_frame_log,
    serialize_frame_log,
    validate_session,
)
from .fusion import FocusDecision, FusionConfig, decide_face, decide_frame, decide_session
from .intervals import Interval, union_intervals, union_measure
from .metrics import (
    ComparisonResult,
    OverlapStats,
    VAMetrics,
    paired_compare,
    task_overlap,
    va_summary,
    windowed_frequency,
)
from .segmentation import BinarySeries, EventStats, GazeEvent, SegConfig, segment, series_stats
from .synth import ConfidenceModel, SynthConfig, SynthSession, TaskSpec, corrupt, generate

__version__ = "0.1.0"

__all__ = [
    "AgreementReport",
    "AnnotationEvent",
    "BinarySeries",
    "ComparisonResult",
    "ConfidenceModel",
    "ConfigError",
    "CrossReference",
    "EventKind",
    "EventStats",
    "FaceObservation",
    "FocusDecision",
    "FrameRecord",
    "FusionConfig",
    "GazeEvent",
    "Interval",
    "OrgazeError",
    "OverlapStats",
    "ParseError",
    "ParsedAnnotations",
    "SCHEMA_VERSION",
    "SegConfig",
    "SessionFrames",
    "SynthConfig",
    "SynthSession",
    "TaskInterval",
    "TaskSpec",
    "VAMetrics",
    "ValidationReport",
    "corrupt",
    "cross_reference",
    "cross_validate",
    "decide_face",
    "decide_frame",
    "decide_session",
    "frame_metrics",
    "generate",
    "load_annotations",
    "load_frame_log",
    "paired_compare",
    "pair_state_events",
    "parse_annotations",
    "parse_frame_log",
    "segment",
    "serialize_frame_log",
    "series_stats",
    "split_dataset",
    "task_overlap",
    "union_intervals",
    "union_measure",
    "va_summary",
    "validate_session",
    "windowed_frequency",
]

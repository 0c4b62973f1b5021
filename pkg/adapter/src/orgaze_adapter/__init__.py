"""Inference adapter: turns vision-model output into frame logs.

The boundary with downstream analytics is the JSON-lines frame-log
schema (version "1"), never in-process calls; this package has no
dependency on the analytics side. The mock backend replays a
synthetic truth script deterministically; the real backend is the
seam where an actual detector/landmark/gaze/onfocus stack plugs in.
"""

from .calibrate import CalibrationReport, calibrate_schema
from .config import AdapterConfig
from .errors import (
    AdapterError,
    ModelLoadError,
    SchemaVersionMismatch,
    VideoDecodeError,
)
from .run import run_inference
from .wire import SCHEMA_VERSION

__all__ = [
    "AdapterConfig",
    "AdapterError",
    "CalibrationReport",
    "ModelLoadError",
    "SCHEMA_VERSION",
    "SchemaVersionMismatch",
    "VideoDecodeError",
    "calibrate_schema",
    "run_inference",
]

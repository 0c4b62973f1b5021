"""Adapter run configuration."""

from __future__ import annotations

import math
from dataclasses import dataclass

BACKENDS = ("mock", "real")

# Model assets the real backend loads, as (field, flag) pairs.
ASSET_FIELDS = (
    ("detector_weights", "--detector-weights"),
    ("landmark_model", "--landmark-model"),
    ("gaze_model", "--gaze-model"),
    ("onfocus_model", "--onfocus-model"),
)


@dataclass(frozen=True)
class AdapterConfig:
    """One inference run: a source, a backend, and an output path.

    The source is either a file path (a video for the real backend, a
    truth script for the mock backend) or a live camera index; exactly
    one of the two must be given. The mock backend takes no model
    assets; passing any is rejected so a misconfigured run fails
    loudly instead of silently ignoring weights.
    """

    video: str | None = None
    camera_index: int | None = None
    backend: str = "mock"
    detector_weights: str | None = None
    landmark_model: str | None = None
    gaze_model: str | None = None
    onfocus_model: str | None = None
    out_path: str = "frames.jsonl"
    fps_override: float | None = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise ValueError(f"backend must be one of {BACKENDS}, "
                             f"got {self.backend!r}")
        if (self.video is None) == (self.camera_index is None):
            raise ValueError("exactly one of video path or camera index "
                             "must be given")
        if self.camera_index is not None:
            if self.camera_index < 0:
                raise ValueError(f"camera index {self.camera_index} is negative")
            if self.backend != "real":
                raise ValueError("a live camera needs the real backend; "
                                 "the mock backend replays a script file")
        if not self.out_path:
            raise ValueError("output path must not be empty")
        if self.fps_override is not None and (
                self.fps_override <= 0 or not math.isfinite(self.fps_override)):
            raise ValueError(f"fps override {self.fps_override} must be positive")
        if self.backend == "mock":
            extra = [flag for field, flag in ASSET_FIELDS
                     if getattr(self, field) is not None]
            if extra:
                raise ValueError("mock backend takes no model assets, got "
                                 + ", ".join(extra))

    @property
    def assets(self) -> dict[str, str | None]:
        return {field: getattr(self, field) for field, _ in ASSET_FIELDS}

"""Real backend: the integration seam for an actual vision stack.

The production pipeline chains four models per frame: a face detector,
a 68-point landmark regressor, a gaze-target scorer producing the
in-frame attention scalar, and an onfocus scorer producing the camera
confidence. Those models and their runtimes are deployment-specific,
so this module only enforces the contract around them: every asset
must be configured and present before anything is attempted, and the
absence of a wired runtime is reported as a load failure rather than
a crash mid-video.
"""

from __future__ import annotations

import os

from .config import ASSET_FIELDS, AdapterConfig
from .errors import ModelLoadError


def check_assets(config: AdapterConfig) -> dict[str, str]:
    """Validate that every model asset is configured and on disk."""
    resolved: dict[str, str] = {}
    for field, flag in ASSET_FIELDS:
        path = getattr(config, field)
        if path is None:
            raise ModelLoadError(f"real backend needs {flag}")
        if not os.path.isfile(path):
            raise ModelLoadError(f"model asset not found: {path}")
        resolved[field] = path
    return resolved


def render_log(config: AdapterConfig) -> bytes:
    check_assets(config)
    raise ModelLoadError(
        "no vision runtime is wired into this build; plug the detector, "
        "landmark, gaze, and onfocus models into real_backend.render_log "
        "and emit frames through orgaze_adapter.wire"
    )

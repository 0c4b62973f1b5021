"""Top-level inference entry point."""

from __future__ import annotations

import os

from . import mock_backend, real_backend
from .config import AdapterConfig


def run_inference(config: AdapterConfig) -> str:
    """Run one source through the configured backend.

    Renders the complete frame log in memory first and only then opens
    the output file, so a failed run never leaves a partial log.
    Returns the path written.
    """
    if config.backend == "mock":
        blob = mock_backend.render_log(config)
    else:
        blob = real_backend.render_log(config)
    parent = os.path.dirname(config.out_path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(config.out_path, "wb") as fh:
        fh.write(blob)
    return config.out_path

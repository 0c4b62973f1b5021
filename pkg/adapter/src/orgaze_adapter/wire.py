"""The JSON-lines frame-log wire format this adapter emits.

One metadata object, then one object per frame:

    {"camera_id": ..., "fps": ..., "schema_version": "1", "session_id": ...}
    {"faces": [...], "frame_index": 0, "t": 0.0}

Face objects carry bbox (x, y, w, h, normalized), det_conf, in_frame,
and optionally onfocus_conf and id. Keys are sorted and separators
compact so a fixed input always serializes to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

SCHEMA_VERSION = "1"


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def metadata_line(session_id: str, camera_id: str, fps: float) -> str:
    return _dumps({
        "session_id": session_id,
        "camera_id": camera_id,
        "fps": fps,
        "schema_version": SCHEMA_VERSION,
    })


def face_obj(
    bbox: tuple[float, float, float, float],
    det_conf: float,
    in_frame: float,
    onfocus_conf: float | None,
    face_id: str,
) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "bbox": list(bbox),
        "det_conf": det_conf,
        "in_frame": in_frame,
        "id": face_id,
    }
    if onfocus_conf is not None:
        obj["onfocus_conf"] = onfocus_conf
    return obj


def frame_line(frame_index: int, t: float, faces: list[dict[str, Any]]) -> str:
    return _dumps({"frame_index": frame_index, "t": t, "faces": faces})

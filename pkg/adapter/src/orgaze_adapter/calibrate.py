"""Schema self-test: check emitted frame logs against the wire contract.

calibrate_schema re-implements the downstream parser's invariants as a
report: it never raises on bad content, it lists violations. Running
it over a freshly emitted log is the adapter's pre-flight check that
a consumer will accept the file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO, Any

from .wire import SCHEMA_VERSION

_METADATA_KEYS = ("session_id", "camera_id", "fps", "schema_version")
_FRAME_KEYS = ("frame_index", "t", "faces")
_FACE_KEYS = ("bbox", "det_conf", "in_frame")


@dataclass(frozen=True)
class CalibrationReport:
    session_id: str | None
    camera_id: str | None
    n_frames: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "camera_id": self.camera_id,
            "n_frames": self.n_frames,
            "ok": self.ok,
            "violations": list(self.violations),
        }


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_unit(out: list[str], line_no: int, name: str, value: Any) -> None:
    if not _is_number(value):
        out.append(f"line {line_no}: {name} must be a number, got {value!r}")
    elif not math.isfinite(value) or value < 0.0 or value > 1.0:
        out.append(f"line {line_no}: {name} {value!r} outside [0, 1]")


def _check_face(out: list[str], line_no: int, index: int, face: Any) -> None:
    label = f"faces[{index}]"
    if not isinstance(face, dict):
        out.append(f"line {line_no}: {label} must be an object, got {face!r}")
        return
    missing = [key for key in _FACE_KEYS if key not in face]
    if missing:
        out.append(f"line {line_no}: {label} missing {missing}")
        return
    bbox = face["bbox"]
    if not isinstance(bbox, list) or len(bbox) != 4:
        out.append(f"line {line_no}: {label} bbox must be a 4-element array")
    else:
        for axis, value in zip(("x", "y", "w", "h"), bbox):
            _check_unit(out, line_no, f"{label} bbox {axis}", value)
        if all(_is_number(v) for v in bbox) and (bbox[2] <= 0 or bbox[3] <= 0):
            out.append(f"line {line_no}: {label} bbox extents must be "
                       f"positive, got w={bbox[2]}, h={bbox[3]}")
    _check_unit(out, line_no, f"{label} det_conf", face["det_conf"])
    _check_unit(out, line_no, f"{label} in_frame", face["in_frame"])
    onfocus_conf = face.get("onfocus_conf")
    if onfocus_conf is not None:
        _check_unit(out, line_no, f"{label} onfocus_conf", onfocus_conf)
    face_id = face.get("id")
    if face_id is not None and not isinstance(face_id, str):
        out.append(f"line {line_no}: {label} id must be a string, "
                   f"got {face_id!r}")


def _check_metadata(out: list[str], line_no: int, obj: Any) -> tuple[str | None, str | None]:
    if not isinstance(obj, dict):
        out.append(f"line {line_no}: metadata must be a JSON object")
        return None, None
    missing = [key for key in _METADATA_KEYS if key not in obj]
    if missing:
        out.append(f"line {line_no}: metadata missing {missing}")
    version = obj.get("schema_version")
    if "schema_version" in obj and version != SCHEMA_VERSION:
        out.append(f"line {line_no}: schema_version {version!r} is not "
                   f"{SCHEMA_VERSION!r}")
    fps = obj.get("fps")
    if "fps" in obj and (not _is_number(fps) or fps <= 0
                         or not math.isfinite(fps)):
        out.append(f"line {line_no}: fps must be a positive number, "
                   f"got {fps!r}")
    session_id = obj.get("session_id")
    camera_id = obj.get("camera_id")
    return (session_id if isinstance(session_id, str) else None,
            camera_id if isinstance(camera_id, str) else None)


def calibrate_schema(source: bytes | str | IO[bytes] | IO[str]) -> CalibrationReport:
    """Check a frame log's records against every wire-format invariant.

    Takes the log as bytes, text, or an open file. The log must hold at
    least one frame record (an empty emission is a pipeline bug, not a
    schema finding); everything else is reported, never raised.
    """
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8", errors="replace")
    elif isinstance(source, str):
        text = source
    else:
        raw = source.read()
        text = raw.decode("utf-8", errors="replace") if isinstance(raw, bytes) else raw

    violations: list[str] = []
    session_id: str | None = None
    camera_id: str | None = None
    n_frames = 0
    seen_metadata = False
    previous_index: int | None = None
    previous_t: float | None = None

    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            violations.append(f"line {line_no}: invalid JSON: {exc.msg}")
            continue
        if not seen_metadata:
            seen_metadata = True
            session_id, camera_id = _check_metadata(violations, line_no, obj)
            continue

        n_frames += 1
        if not isinstance(obj, dict):
            violations.append(f"line {line_no}: frame record must be a "
                              "JSON object")
            continue
        missing = [key for key in _FRAME_KEYS if key not in obj]
        if missing:
            violations.append(f"line {line_no}: frame record missing {missing}")
            continue

        index = obj["frame_index"]
        if not isinstance(index, int) or isinstance(index, bool):
            violations.append(f"line {line_no}: frame_index must be an "
                              f"integer, got {index!r}")
        else:
            if index < 0:
                violations.append(f"line {line_no}: frame_index {index} "
                                  "is negative")
            if previous_index is not None and index <= previous_index:
                violations.append(f"line {line_no}: frame_index {index} does "
                                  f"not increase past {previous_index}")
            previous_index = index

        t = obj["t"]
        if not _is_number(t):
            violations.append(f"line {line_no}: t must be a number, got {t!r}")
        else:
            if t < 0 or not math.isfinite(t):
                violations.append(f"line {line_no}: t {t!r} invalid")
            if previous_t is not None and t <= previous_t:
                violations.append(f"line {line_no}: t {t!r} does not "
                                  f"increase past {previous_t!r}")
            previous_t = t

        faces = obj["faces"]
        if not isinstance(faces, list):
            violations.append(f"line {line_no}: faces must be an array")
            continue
        for face_index, face in enumerate(faces):
            _check_face(violations, line_no, face_index, face)

    if not seen_metadata:
        violations.append("log contains no records")
    if n_frames == 0:
        raise ValueError("calibration needs at least one frame record")

    return CalibrationReport(
        session_id=session_id,
        camera_id=camera_id,
        n_frames=n_frames,
        violations=tuple(violations),
    )

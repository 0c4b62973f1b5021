"""Frame-prediction data model and per-session log parsing.

The canonical wire format is JSON lines, schema version "1":

    {"session_id": "s1", "camera_id": "patient_monitor", "fps": 25, "schema_version": "1"}
    {"frame_index": 0, "t": 0.0, "faces": [{"id": "a", "bbox": [x, y, w, h],
     "det_conf": 0.98, "in_frame": 0.1, "onfocus_conf": 0.9}]}

The first line is session metadata; every following non-blank line is
one frame. ``onfocus_conf`` is omitted when the upstream gate
short-circuited before the onfocus scorer ran. A flat CSV import path
exists for legacy logs (one row per face, frames with no detections
leave the face columns empty; see README for the column list).

Timestamps are authoritative and must increase strictly; frame_index
is advisory but must also increase strictly. Frames with zero faces
are retained: they carry the "nobody onfocus" signal that total-time
denominators need.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import IO, Any, Iterable, Literal

from .errors import EmptyLog, MalformedRecord, MissingMetadata, NonMonotonicTimestamp
from .intervals import Interval

SCHEMA_VERSION = "1"

CSV_COLUMNS = (
    "session_id", "camera_id", "fps", "frame_index", "t",
    "face_id", "bbox_x", "bbox_y", "bbox_w", "bbox_h",
    "det_conf", "in_frame", "onfocus_conf",
)


def _check_unit(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and not isinstance(value, bool)):
        raise ValueError(f"{name} must be a number, got {value!r}")
    if not (0.0 <= value <= 1.0) or not math.isfinite(value):
        raise ValueError(f"{name} {value} outside [0, 1]")


@dataclass(frozen=True)
class FaceObservation:
    """One detected face with its attention scores.

    bbox is (x, y, w, h) normalized to [0, 1]. in_frame_attention is
    the spatiotemporal scalar (high means the attention target is an
    object inside the scene). onfocus_confidence is None when the gate
    short-circuited upstream and the onfocus scorer never ran.
    """

    bbox: tuple[float, float, float, float]
    detector_confidence: float
    in_frame_attention: float
    onfocus_confidence: float | None = None
    face_id: str | None = None

    def __post_init__(self):
        if len(self.bbox) != 4:
            raise ValueError(f"bbox must have 4 components, got {self.bbox!r}")
        x, y, w, h = self.bbox
        for name, v in (("bbox x", x), ("bbox y", y), ("bbox w", w), ("bbox h", h)):
            _check_unit(name, v)
        if w <= 0 or h <= 0:
            raise ValueError(f"bbox extents must be positive, got w={w}, h={h}")
        _check_unit("detector_confidence", self.detector_confidence)
        _check_unit("in_frame_attention", self.in_frame_attention)
        if self.onfocus_confidence is not None:
            _check_unit("onfocus_confidence", self.onfocus_confidence)

    @property
    def area(self) -> float:
        return self.bbox[2] * self.bbox[3]


@dataclass(frozen=True)
class FrameRecord:
    """All model outputs for one video frame."""

    frame_index: int
    timestamp: float
    faces: tuple[FaceObservation, ...]
    camera_id: str

    def __post_init__(self):
        if self.frame_index < 0:
            raise ValueError(f"frame_index {self.frame_index} is negative")
        if self.timestamp < 0 or not math.isfinite(self.timestamp):
            raise ValueError(f"timestamp {self.timestamp} invalid")


@dataclass(frozen=True)
class SessionFrames:
    """An immutable, validated per-camera session of frame records."""

    session_id: str
    camera_id: str
    fps_nominal: float
    frames: tuple[FrameRecord, ...]
    phase: Interval | None = None

    def __post_init__(self):
        if self.fps_nominal <= 0 or not math.isfinite(self.fps_nominal):
            raise ValueError(f"fps_nominal {self.fps_nominal} must be positive")
        if not self.frames:
            raise ValueError("session must contain at least one frame")
        if self.phase is not None:
            first = self.frames[0].timestamp
            # The final frame still covers one nominal period, so the
            # phase may extend that far past the last sample time.
            limit = self.frames[-1].timestamp + 1.0 / self.fps_nominal + 1e-9
            if self.phase.start < first - 1e-9 or self.phase.end > limit:
                raise ValueError(
                    f"phase {self.phase} outside session span "
                    f"[{first}, {limit}]"
                )

    @property
    def first_timestamp(self) -> float:
        return self.frames[0].timestamp

    @property
    def last_timestamp(self) -> float:
        return self.frames[-1].timestamp

    @property
    def span(self) -> Interval:
        return Interval(self.first_timestamp, self.last_timestamp)


# -- parsing ----------------------------------------------------------


def _read_text(source: bytes | bytearray | IO[bytes] | IO[str]) -> str:
    if isinstance(source, (bytes, bytearray)):
        raw: Any = bytes(source)
    else:
        raw = source.read()
    if isinstance(raw, str):
        return raw
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedRecord(None, f"input is not valid UTF-8: {exc}") from None


def _face_from_json(obj: Any, line_no: int) -> FaceObservation:
    if not isinstance(obj, dict):
        raise MalformedRecord(line_no, f"face entry must be an object, got {obj!r}")
    for key in ("bbox", "det_conf", "in_frame"):
        if key not in obj:
            raise MalformedRecord(line_no, f"face entry missing {key!r}")
    bbox = obj["bbox"]
    if not isinstance(bbox, (list, tuple)) or len(bbox) != 4:
        raise MalformedRecord(line_no, f"bbox must be a 4-element array, got {bbox!r}")
    try:
        return FaceObservation(
            bbox=tuple(float(v) for v in bbox),
            detector_confidence=obj["det_conf"],
            in_frame_attention=obj["in_frame"],
            onfocus_confidence=obj.get("onfocus_conf"),
            face_id=obj.get("id"),
        )
    except (TypeError, ValueError) as exc:
        raise MalformedRecord(line_no, str(exc)) from None


def _frame_from_json(obj: Any, camera_id: str, line_no: int) -> FrameRecord:
    if not isinstance(obj, dict):
        raise MalformedRecord(line_no, "frame record must be a JSON object")
    for key in ("frame_index", "t", "faces"):
        if key not in obj:
            raise MalformedRecord(line_no, f"frame record missing {key!r}")
    idx = obj["frame_index"]
    if not isinstance(idx, int) or isinstance(idx, bool):
        raise MalformedRecord(line_no, f"frame_index must be an integer, got {idx!r}")
    t = obj["t"]
    if isinstance(t, bool) or not isinstance(t, (int, float)):
        raise MalformedRecord(line_no, f"t must be a number, got {t!r}")
    faces_obj = obj["faces"]
    if not isinstance(faces_obj, list):
        raise MalformedRecord(line_no, "faces must be an array")
    faces = tuple(_face_from_json(f, line_no) for f in faces_obj)
    try:
        return FrameRecord(frame_index=idx, timestamp=float(t), faces=faces,
                           camera_id=camera_id)
    except ValueError as exc:
        raise MalformedRecord(line_no, str(exc)) from None


def _check_order(frames: list[FrameRecord], line_nos: list[int]) -> None:
    for i in range(1, len(frames)):
        if frames[i].timestamp <= frames[i - 1].timestamp:
            raise NonMonotonicTimestamp(
                line_nos[i], frames[i - 1].timestamp, frames[i].timestamp
            )
        if frames[i].frame_index <= frames[i - 1].frame_index:
            raise MalformedRecord(
                line_nos[i],
                f"frame_index {frames[i].frame_index} does not increase past "
                f"{frames[i - 1].frame_index}",
            )


def _parse_jsonl(text: str) -> SessionFrames:
    meta: dict[str, Any] | None = None
    frames: list[FrameRecord] = []
    line_nos: list[int] = []
    camera_id = ""
    for line_no, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedRecord(line_no, f"invalid JSON: {exc.msg}") from None
        if meta is None:
            if not isinstance(obj, dict) or "session_id" not in obj:
                raise MissingMetadata(
                    f"line {line_no}: first record must be the metadata object "
                    "with session_id, camera_id, fps, schema_version"
                )
            for key in ("session_id", "camera_id", "fps", "schema_version"):
                if key not in obj:
                    raise MissingMetadata(f"metadata missing {key!r}")
            if obj["schema_version"] != SCHEMA_VERSION:
                raise MalformedRecord(
                    line_no,
                    f"unsupported schema_version {obj['schema_version']!r} "
                    f"(expected {SCHEMA_VERSION!r})",
                )
            if not isinstance(obj["fps"], (int, float)) or isinstance(obj["fps"], bool) \
                    or obj["fps"] <= 0:
                raise MalformedRecord(line_no, f"fps must be positive, got {obj['fps']!r}")
            meta = obj
            camera_id = str(obj["camera_id"])
            continue
        frames.append(_frame_from_json(obj, camera_id, line_no))
        line_nos.append(line_no)
    if meta is None:
        if frames:  # unreachable: frames require metadata first
            raise MissingMetadata("no metadata header found")
        raise EmptyLog("log contains no records")
    if not frames:
        raise EmptyLog("log contains metadata but no frame records")
    _check_order(frames, line_nos)
    return SessionFrames(
        session_id=str(meta["session_id"]),
        camera_id=camera_id,
        fps_nominal=float(meta["fps"]),
        frames=tuple(frames),
    )


def _parse_csv(text: str) -> SessionFrames:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise MissingMetadata("CSV log has no header row")
    missing_meta = {"session_id", "camera_id", "fps"} - set(reader.fieldnames)
    if missing_meta:
        raise MissingMetadata(f"CSV header missing columns {sorted(missing_meta)}")
    for col in ("frame_index", "t"):
        if col not in reader.fieldnames:
            raise MalformedRecord(1, f"CSV header missing column {col!r}")

    meta: tuple[str, str, float] | None = None
    frames: list[FrameRecord] = []
    line_nos: list[int] = []
    cur_key: tuple[int, float] | None = None
    cur_faces: list[FaceObservation] = []
    cur_line = 0

    def flush():
        if cur_key is None:
            return
        frames.append(FrameRecord(
            frame_index=cur_key[0], timestamp=cur_key[1],
            faces=tuple(cur_faces), camera_id=meta[1] if meta else "",
        ))
        line_nos.append(cur_line)

    for line_no, row in enumerate(reader, 2):
        try:
            row_meta = (row["session_id"], row["camera_id"], float(row["fps"]))
            idx = int(row["frame_index"])
            t = float(row["t"])
        except (TypeError, ValueError, KeyError) as exc:
            raise MalformedRecord(line_no, f"bad row: {exc}") from None
        if meta is None:
            meta = row_meta
        elif row_meta != meta:
            raise MalformedRecord(line_no, "session metadata changes mid-file")
        if cur_key != (idx, t):
            flush()
            cur_key = (idx, t)
            cur_faces = []
            cur_line = line_no
        if (row.get("bbox_x") or "").strip():
            try:
                face = FaceObservation(
                    bbox=(float(row["bbox_x"]), float(row["bbox_y"]),
                          float(row["bbox_w"]), float(row["bbox_h"])),
                    detector_confidence=float(row["det_conf"]),
                    in_frame_attention=float(row["in_frame"]),
                    onfocus_confidence=(float(row["onfocus_conf"])
                                        if (row.get("onfocus_conf") or "").strip()
                                        else None),
                    face_id=(row.get("face_id") or "").strip() or None,
                )
            except (TypeError, ValueError, KeyError) as exc:
                raise MalformedRecord(line_no, f"bad face columns: {exc}") from None
            cur_faces.append(face)
    if meta is None:
        raise EmptyLog("CSV log has a header but no rows")
    flush()
    try:
        _check_order(frames, line_nos)
    except MalformedRecord:
        raise
    return SessionFrames(
        session_id=meta[0], camera_id=meta[1], fps_nominal=meta[2],
        frames=tuple(frames),
    )


def parse_frame_log(
    source: bytes | bytearray | IO[bytes] | IO[str],
    format: Literal["jsonl", "csv"] = "jsonl",
) -> SessionFrames:
    """Parse a per-session prediction log into a validated SessionFrames.

    Every input either yields a SessionFrames or raises exactly one of
    MalformedRecord, NonMonotonicTimestamp, MissingMetadata, EmptyLog;
    records are never silently dropped.
    """
    text = _read_text(source)
    if format == "jsonl":
        return _parse_jsonl(text)
    if format == "csv":
        return _parse_csv(text)
    raise ValueError(f"unknown format {format!r}")


def load_frame_log(path, format: Literal["jsonl", "csv"] = "jsonl") -> SessionFrames:
    with open(path, "rb") as fh:
        return parse_frame_log(fh, format=format)


# -- serialization ----------------------------------------------------


def _face_to_json(f: FaceObservation) -> dict[str, Any]:
    obj: dict[str, Any] = {
        "bbox": list(f.bbox),
        "det_conf": f.detector_confidence,
        "in_frame": f.in_frame_attention,
    }
    if f.onfocus_confidence is not None:
        obj["onfocus_conf"] = f.onfocus_confidence
    if f.face_id is not None:
        obj["id"] = f.face_id
    return obj


def serialize_frame_log(s: SessionFrames) -> bytes:
    """Render a SessionFrames back to canonical JSONL bytes.

    Deterministic: sorted keys, compact separators, shortest-roundtrip
    float repr. parse(serialize(x)) equals x field-for-field.
    """
    lines = [json.dumps(
        {"session_id": s.session_id, "camera_id": s.camera_id,
         "fps": s.fps_nominal, "schema_version": SCHEMA_VERSION},
        sort_keys=True, separators=(",", ":"),
    )]
    for fr in s.frames:
        lines.append(json.dumps(
            {"frame_index": fr.frame_index, "t": fr.timestamp,
             "faces": [_face_to_json(f) for f in fr.faces]},
            sort_keys=True, separators=(",", ":"),
        ))
    return ("\n".join(lines) + "\n").encode("utf-8")


# -- validation report ------------------------------------------------


@dataclass(frozen=True)
class GapInfo:
    """A pause between consecutive frames longer than 2 nominal periods."""

    after_frame_index: int
    start: float
    end: float

    @property
    def duration(self) -> float:
        return self.end - self.start


@dataclass(frozen=True)
class ScoreSummary:
    n: int
    min: float | None
    mean: float | None
    max: float | None


@dataclass(frozen=True)
class ValidationReport:
    session_id: str
    camera_id: str
    n_frames: int
    duration_s: float
    fps_nominal: float
    gaps: tuple[GapInfo, ...]
    zero_face_fraction: float
    detector_confidence: ScoreSummary
    in_frame_attention: ScoreSummary
    onfocus_confidence: ScoreSummary
    warnings: tuple[str, ...] = field(default=())

    @property
    def gap_count(self) -> int:
        return len(self.gaps)

    def to_dict(self) -> dict[str, Any]:
        def score(s: ScoreSummary) -> dict[str, Any]:
            return {"n": s.n, "min": s.min, "mean": s.mean, "max": s.max}

        return {
            "session_id": self.session_id,
            "camera_id": self.camera_id,
            "n_frames": self.n_frames,
            "duration_s": self.duration_s,
            "fps_nominal": self.fps_nominal,
            "gap_count": self.gap_count,
            "gaps": [
                {"after_frame_index": g.after_frame_index, "start": g.start,
                 "end": g.end, "duration": g.duration}
                for g in self.gaps
            ],
            "zero_face_fraction": self.zero_face_fraction,
            "detector_confidence": score(self.detector_confidence),
            "in_frame_attention": score(self.in_frame_attention),
            "onfocus_confidence": score(self.onfocus_confidence),
            "warnings": list(self.warnings),
        }


def _summarize(values: list[float]) -> ScoreSummary:
    if not values:
        return ScoreSummary(0, None, None, None)
    return ScoreSummary(len(values), min(values), sum(values) / len(values),
                        max(values))


def validate_session(s: SessionFrames) -> ValidationReport:
    """Report-only hygiene check: frame gaps, zero-face fraction,
    confidence distributions. Never mutates or rejects the session."""
    threshold = 2.0 / s.fps_nominal
    gaps = []
    for prev, cur in zip(s.frames, s.frames[1:]):
        delta = cur.timestamp - prev.timestamp
        if delta > threshold:
            gaps.append(GapInfo(prev.frame_index, prev.timestamp, cur.timestamp))
    zero_faces = sum(1 for fr in s.frames if not fr.faces)
    det, inf, onf = [], [], []
    for fr in s.frames:
        for f in fr.faces:
            det.append(f.detector_confidence)
            inf.append(f.in_frame_attention)
            if f.onfocus_confidence is not None:
                onf.append(f.onfocus_confidence)
    warnings = tuple(
        f"gap of {g.duration:.3f} s after frame {g.after_frame_index} "
        f"(t={g.start:.3f} to t={g.end:.3f})"
        for g in gaps
    )
    return ValidationReport(
        session_id=s.session_id,
        camera_id=s.camera_id,
        n_frames=len(s.frames),
        duration_s=s.last_timestamp - s.first_timestamp,
        fps_nominal=s.fps_nominal,
        gaps=tuple(gaps),
        zero_face_fraction=zero_faces / len(s.frames),
        detector_confidence=_summarize(det),
        in_frame_attention=_summarize(inf),
        onfocus_confidence=_summarize(onf),
        warnings=warnings,
    )


def frames_to_csv(s: SessionFrames) -> bytes:
    """Export to the flat legacy CSV layout (one row per face)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for fr in s.frames:
        base = [s.session_id, s.camera_id, repr(s.fps_nominal),
                fr.frame_index, repr(fr.timestamp)]
        if not fr.faces:
            writer.writerow(base + [""] * 8)
            continue
        for f in fr.faces:
            writer.writerow(base + [
                f.face_id or "",
                repr(f.bbox[0]), repr(f.bbox[1]), repr(f.bbox[2]), repr(f.bbox[3]),
                repr(f.detector_confidence), repr(f.in_frame_attention),
                "" if f.onfocus_confidence is None else repr(f.onfocus_confidence),
            ])
    return buf.getvalue().encode("utf-8")

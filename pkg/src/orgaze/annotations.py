"""Human observation-log import and state-event pairing.

Input is the flat CSV export shape used by behavioral coding tools:
columns ``time, subject, behavior, modifier, kind`` where kind is
``point``, ``start`` or ``stop`` (case-insensitive, so uppercase
exports pass through unchanged). STATE behaviors arrive as paired
start/stop rows and are reassembled here into half-open intervals.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import IO, NamedTuple

from .errors import MalformedRow, NestedState, UnknownKind, UnmatchedStart, UnmatchedStop
from .intervals import Interval

REQUIRED_COLUMNS = ("time", "subject", "behavior", "modifier", "kind")


class EventKind(enum.Enum):
    POINT = "point"
    START = "start"
    STOP = "stop"

    @classmethod
    def parse(cls, raw: str, line_no: int) -> "EventKind":
        try:
            return cls(raw.strip().lower())
        except ValueError:
            raise UnknownKind(line_no, raw) from None


@dataclass(frozen=True)
class AnnotationEvent:
    """One coded row: a point event or one edge of a state interval."""

    time: float
    subject: str
    behavior: str
    modifier: str | None
    kind: EventKind


@dataclass(frozen=True)
class TaskInterval:
    """A reassembled state behavior over a half-open time interval."""

    behavior: str
    subject: str
    interval: Interval
    modifier: str | None = None

    def __post_init__(self):
        if self.interval.duration <= 0:
            raise ValueError(f"task interval {self.interval} must have duration > 0")

    @property
    def duration(self) -> float:
        return self.interval.duration


class ParsedAnnotations(NamedTuple):
    events: list[AnnotationEvent]
    warnings: list[str]


def parse_annotations(source: bytes | bytearray | IO[bytes] | IO[str]) -> ParsedAnnotations:
    """Parse an observation CSV into time-sorted events plus warnings.

    Unknown columns are tolerated (warned once each); rows must carry a
    finite non-negative time. An empty file parses to no events.
    """
    if isinstance(source, (bytes, bytearray)):
        text = bytes(source).decode("utf-8")
    else:
        raw = source.read()
        text = raw.decode("utf-8") if isinstance(raw, bytes) else raw
    if not text.strip():
        return ParsedAnnotations([], [])

    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise MalformedRow(1, f"header missing columns {missing}")
    warnings = [
        f"ignoring unknown column {c!r}"
        for c in header if c not in REQUIRED_COLUMNS
    ]

    events: list[AnnotationEvent] = []
    for line_no, row in enumerate(reader, 2):
        raw_time = (row.get("time") or "").strip()
        try:
            time = float(raw_time)
        except ValueError:
            raise MalformedRow(line_no, f"bad time {raw_time!r}") from None
        if time < 0 or time != time or time in (float("inf"), float("-inf")):
            raise MalformedRow(line_no, f"time {time} must be finite and >= 0")
        behavior = (row.get("behavior") or "").strip()
        if not behavior:
            raise MalformedRow(line_no, "behavior is empty")
        modifier = (row.get("modifier") or "").strip() or None
        events.append(AnnotationEvent(
            time=time,
            subject=(row.get("subject") or "").strip(),
            behavior=behavior,
            modifier=modifier,
            kind=EventKind.parse(row.get("kind") or "", line_no),
        ))
    # At equal timestamps a stop must precede a start so that
    # back-to-back states of the same key pair up instead of nesting.
    kind_order = {EventKind.STOP: 0, EventKind.POINT: 1, EventKind.START: 2}
    events.sort(key=lambda e: (e.time, kind_order[e.kind], e.behavior, e.subject))
    return ParsedAnnotations(events, warnings)


def load_annotations(path) -> ParsedAnnotations:
    with open(path, "rb") as fh:
        return parse_annotations(fh)


def pair_state_events(
    events: list[AnnotationEvent],
    session_end: float,
    policy: str = "truncate",
) -> list[TaskInterval]:
    """Reassemble start/stop rows into TaskIntervals.

    Pairing key is (subject, behavior, modifier): the same behavior on
    two monitors, or by two subjects, tracks independently. Point
    events are ignored here.

    policy="strict": any unmatched or nested edge raises.
    policy="truncate": an open state at end of observation closes at
    session_end; a stop with no prior start opens at time 0 (the coder
    joined mid-state). Results are clipped to [0, session_end] and
    zero-length residue is dropped.
    """
    if policy not in ("strict", "truncate"):
        raise ValueError(f"unknown policy {policy!r}")

    open_starts: dict[tuple[str, str, str | None], tuple[int, float]] = {}
    out: list[TaskInterval] = []

    def emit(key: tuple[str, str, str | None], start: float, stop: float) -> None:
        lo = max(0.0, min(start, session_end))
        hi = max(0.0, min(stop, session_end))
        if hi > lo:
            subject, behavior, modifier = key
            out.append(TaskInterval(behavior=behavior, subject=subject,
                                    interval=Interval(lo, hi), modifier=modifier))

    for index, ev in enumerate(events):
        if ev.kind is EventKind.POINT:
            continue
        key = (ev.subject, ev.behavior, ev.modifier)
        if ev.kind is EventKind.START:
            if key in open_starts:
                raise NestedState(index, key)
            open_starts[key] = (index, ev.time)
        else:
            if key not in open_starts:
                if policy == "strict":
                    raise UnmatchedStop(index, key)
                emit(key, 0.0, ev.time)
                continue
            _, start_time = open_starts.pop(key)
            emit(key, start_time, ev.time)

    if open_starts:
        if policy == "strict":
            index, _ = min(open_starts.values())
            key = next(k for k, v in open_starts.items() if v[0] == index)
            raise UnmatchedStart(index, key)
        for key, (_, start_time) in open_starts.items():
            emit(key, start_time, session_end)

    out.sort(key=lambda ti: (ti.interval.start, ti.interval.end, ti.behavior,
                             ti.subject, ti.modifier or ""))
    return out


def point_events(events: list[AnnotationEvent]) -> list[AnnotationEvent]:
    return [e for e in events if e.kind is EventKind.POINT]

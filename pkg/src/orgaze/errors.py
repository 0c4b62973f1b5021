"""Exception taxonomy.

Two families matter to the command line: ParseError (malformed input
data, exit code 2) and ConfigError (unusable configuration or request,
exit code 3). Everything derives from OrgazeError so callers can catch
one base class.
"""

from __future__ import annotations


class OrgazeError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OrgazeError):
    """Input data could not be parsed or violates a schema invariant."""


class ConfigError(OrgazeError):
    """A configuration value or request is invalid."""


# -- frame logs -------------------------------------------------------


class MalformedRecord(ParseError):
    """A frame-log record is syntactically or semantically invalid."""

    def __init__(self, line_no: int | None, reason: str):
        self.line_no = line_no
        self.reason = reason
        where = f"line {line_no}" if line_no is not None else "input"
        super().__init__(f"{where}: {reason}")


class NonMonotonicTimestamp(ParseError):
    """Timestamps must be strictly increasing within a session."""

    def __init__(self, line_no: int | None, t_prev: float, t_cur: float):
        self.line_no = line_no
        self.t_prev = t_prev
        self.t_cur = t_cur
        where = f"line {line_no}" if line_no is not None else "input"
        super().__init__(
            f"{where}: timestamp {t_cur} does not increase past {t_prev}"
        )


class MissingMetadata(ParseError):
    """The metadata header (session_id, camera_id, fps) is absent."""


class EmptyLog(ParseError):
    """The log contains no frame records."""


# -- annotations ------------------------------------------------------


class MalformedRow(ParseError):
    """An annotation CSV row is invalid."""

    def __init__(self, line_no: int | None, reason: str):
        self.line_no = line_no
        self.reason = reason
        where = f"line {line_no}" if line_no is not None else "input"
        super().__init__(f"{where}: {reason}")


class UnknownKind(ParseError):
    """An annotation row carries a kind outside point/start/stop."""

    def __init__(self, line_no: int | None, kind: str):
        self.line_no = line_no
        self.kind = kind
        where = f"line {line_no}" if line_no is not None else "input"
        super().__init__(f"{where}: unknown event kind {kind!r}")


class UnmatchedStart(ParseError):
    """A state start has no matching stop (strict pairing only)."""

    def __init__(self, index: int, key: tuple):
        self.index = index
        self.key = key
        super().__init__(f"event {index}: start {key!r} never stopped")


class UnmatchedStop(ParseError):
    """A state stop has no matching open start (strict pairing only)."""

    def __init__(self, index: int, key: tuple):
        self.index = index
        self.key = key
        super().__init__(f"event {index}: stop {key!r} without open start")


class NestedState(ParseError):
    """Two same-key starts without an intervening stop."""

    def __init__(self, index: int, key: tuple):
        self.index = index
        self.key = key
        super().__init__(f"event {index}: start {key!r} while already open")


# -- metrics / evaluation ---------------------------------------------


class EmptyPhase(ConfigError):
    """The analysis phase has zero or negative duration."""


class ZeroTaskTime(OrgazeError):
    """A behavior's task intervals have zero total measure."""

    def __init__(self, behavior: str):
        self.behavior = behavior
        super().__init__(f"behavior {behavior!r} has zero task time")


class LengthMismatch(OrgazeError):
    """Paired inputs differ in length."""


class TooFewPairs(OrgazeError):
    """Paired comparison needs at least two pairs."""


class EmptyInput(OrgazeError):
    """An operation received an empty input it cannot handle."""


class TooSmall(OrgazeError):
    """Dataset too small to split."""


class TooFewItems(OrgazeError):
    """Fewer items than cross-validation folds."""


# -- synth ------------------------------------------------------------


class InfeasibleConfig(ConfigError):
    """Requested synthetic event mass does not fit in the phase."""

"""Adapter error hierarchy."""

from __future__ import annotations


class AdapterError(Exception):
    """Base class for everything this package raises on purpose."""


class ModelLoadError(AdapterError):
    """A model asset is missing, unreadable, or has no usable runtime."""


class VideoDecodeError(AdapterError):
    """The input source (video file or mock script) cannot be decoded."""


class SchemaVersionMismatch(AdapterError):
    """The input declares a schema version this adapter does not speak."""

    def __init__(self, found: object, expected: str):
        super().__init__(
            f"schema_version {found!r} is not supported (expected {expected!r})"
        )
        self.found = found
        self.expected = expected

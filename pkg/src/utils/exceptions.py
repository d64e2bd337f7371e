from __future__ import annotations


class SirError(RuntimeError):
    """Base exception for SiR."""


class ImageIOError(SirError):
    """Image file could not be read or written."""


class DimensionMismatchError(SirError):
    """Two rasters that must share a size do not."""


class InvalidParameterError(SirError, ValueError):
    """A filter, preset or evaluation parameter is out of range."""


class CorpusError(SirError):
    """Benchmark corpus could not be loaded or produced no results."""

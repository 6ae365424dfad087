"""Exception types shared across the package."""


class SeqmatchError(Exception):
    """Base class for all package errors."""


class IngestError(SeqmatchError):
    """A corpus root or source file cannot be read."""


class IndexBuildError(SeqmatchError):
    """Index construction failed (lock held, duplicate keys, bad output dir)."""


class IndexFormatError(SeqmatchError):
    """An on-disk index is missing, truncated, or has an unknown format version."""


class QueryError(SeqmatchError):
    """A query cannot be turned into a search plan (no searchable words)."""

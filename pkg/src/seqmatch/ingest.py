"""Repository discovery and Java source streaming.

Corpora arrive as plain directory trees (one subdirectory per repository, or
a bare tree of .java files). This module walks them deterministically and
hands decoded file contents to the extractor. No VCS awareness, no network.
"""

from __future__ import annotations

import fnmatch
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import IngestError

log = logging.getLogger(__name__)

DEFAULT_MAX_FILE_BYTES = 1 << 20


@dataclass(frozen=True, slots=True)
class RepoSpec:
    """One repository root. repo_id is the directory name unless overridden.

    Same-named children under different roots would collide; the index
    builder's duplicate method_key check turns that into a hard error
    rather than a silent merge.
    """

    repo_id: str
    root_path: Path

    def __post_init__(self) -> None:
        if not self.repo_id:
            raise IngestError("repo_id must be non-empty")


@dataclass(frozen=True, slots=True)
class SourceFile:
    repo_id: str
    rel_path: str
    text: str
    byte_len: int


@dataclass(slots=True)
class IngestStats:
    """Mutable counters threaded through one streaming pass."""

    yielded: int = 0
    skipped_oversize: int = 0
    skipped_unreadable: int = 0
    skipped_excluded: int = 0
    bytes_read: int = 0

    @property
    def seen(self) -> int:
        return (
            self.yielded
            + self.skipped_oversize
            + self.skipped_unreadable
            + self.skipped_excluded
        )


def discover_repos(roots: list[Path | str]) -> list[RepoSpec]:
    """One RepoSpec per immediate child directory of each root.

    A root that directly contains .java files is treated as a single
    repository itself (its children, if any, are then part of it and are
    not listed separately). Output is lexicographic by repo_id within
    each root, roots in the order given.
    """
    specs: list[RepoSpec] = []
    for raw in roots:
        root = Path(raw)
        if not root.is_dir():
            raise IngestError(f"corpus root is not a readable directory: {root}")
        try:
            entries = sorted(root.iterdir(), key=lambda p: p.name)
        except OSError as exc:
            raise IngestError(f"cannot list corpus root {root}: {exc}") from exc
        if any(e.is_file() and e.name.endswith(".java") for e in entries):
            specs.append(RepoSpec(repo_id=root.name or str(root), root_path=root))
            continue
        for entry in entries:
            if entry.is_dir():
                specs.append(RepoSpec(repo_id=entry.name, root_path=entry))
    return specs


def stream_sources(
    repo: RepoSpec,
    *,
    max_file_bytes: int = DEFAULT_MAX_FILE_BYTES,
    exclude: tuple[str, ...] = (),
    stats: IngestStats | None = None,
) -> Iterator[SourceFile]:
    """Yield every .java file under the repo root, lexicographic path order.

    Oversized or unreadable files are skipped with a warning, never abort
    the stream. Text is decoded as UTF-8 with replacement characters for
    invalid bytes. `exclude` holds fnmatch globs tested against rel_path.
    """
    if stats is None:
        stats = IngestStats()
    paths = sorted(
        repo.root_path.rglob("*.java"), key=lambda p: p.relative_to(repo.root_path).as_posix()
    )
    for path in paths:
        if not path.is_file():
            continue
        rel = path.relative_to(repo.root_path).as_posix()
        if any(fnmatch.fnmatch(rel, pat) for pat in exclude):
            stats.skipped_excluded += 1
            continue
        try:
            size = path.stat().st_size
            if size > max_file_bytes:
                log.warning(
                    "skipping oversized file %s (%d bytes > %d)", rel, size, max_file_bytes
                )
                stats.skipped_oversize += 1
                continue
            data = path.read_bytes()
        except OSError as exc:
            log.warning("skipping unreadable file %s: %s", rel, exc)
            stats.skipped_unreadable += 1
            continue
        stats.yielded += 1
        stats.bytes_read += len(data)
        yield SourceFile(
            repo_id=repo.repo_id,
            rel_path=rel,
            text=data.decode("utf-8", errors="replace"),
            byte_len=len(data),
        )

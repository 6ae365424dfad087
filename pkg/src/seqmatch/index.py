"""On-disk name index over MethodRecords.

Layout inside an index directory:

    methods.jsonl   one MethodRecord per line, the source of truth
    names.idx       per record: byte offset into methods.jsonl + name_lower
    postings.bin    optional trigram -> record-ordinal postings (prefilter)
    frequency.tsv   stemmed name-word -> corpus count
    meta.json       format_version and counts; loaders reject unknown versions

The index is immutable after build; any number of threads may search one
loaded instance. Builds take an exclusive lock file in the output directory.

Ordered containment ("does the name match .*w1.*…*wn.*") is decided by a
greedy leftmost scan: match each word at its earliest position after the
previous word's end. Greedy is sound and complete here — taking the earliest
feasible occurrence never blocks a later word, since any placement a later
word could use remains available when earlier words sit further left.

The trigram prefilter is lossless: a name can only satisfy a pattern if it
contains every word, hence every trigram of every word. Words shorter than
three characters produce no trigrams and therefore no constraint; they are
left entirely to the verifying scan.
"""

from __future__ import annotations

import json
import logging
import struct
from array import array
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import IndexBuildError, IndexFormatError
from .extractor import MethodRecord
from .lexicons import FrequencyTable

log = logging.getLogger(__name__)

FORMAT_VERSION = 1

_METHODS = "methods.jsonl"
_NAMES = "names.idx"
_POSTINGS = "postings.bin"
_FREQUENCY = "frequency.tsv"
_META = "meta.json"
_LOCK = ".build.lock"


@dataclass(frozen=True, slots=True)
class MatchPattern:
    """Ordered lowercase stemmed words; stands for .*w1.*…*wn.*"""

    words: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.words or any(not w for w in self.words):
            raise ValueError("pattern words must be non-empty")

    @property
    def wildcard(self) -> str:
        return ".*" + ".*".join(self.words) + ".*"


def ordered_match(name_lower: str, pattern: MatchPattern) -> bool:
    """True iff the words occur in order as non-overlapping substrings."""
    pos = 0
    for word in pattern.words:
        hit = name_lower.find(word, pos)
        if hit < 0:
            return False
        pos = hit + len(word)
    return True


def _trigrams(text: str) -> set[str]:
    return {text[i : i + 3] for i in range(len(text) - 2)}


class NameIndex:
    """Loaded, immutable index: records, name table, optional postings."""

    def __init__(
        self,
        records: list[MethodRecord],
        frequency: FrequencyTable,
        postings: dict[str, array] | None,
    ):
        self.records = records
        self.names = [r.name_lower for r in records]
        self.frequency = frequency
        self.postings = postings

    def __len__(self) -> int:
        return len(self.records)

    def search(self, pattern: MatchPattern) -> list[int]:
        return search_names(self, pattern)

    def stats(self) -> dict:
        buckets = [0, 0, 0, 0]
        for r in self.records:
            if not r.api_sequence:
                buckets[0] += 1
                continue
            ratio = r.jdk_ratio
            buckets[min(3, int(ratio * 4)) if ratio < 1.0 else 3] += 1
        return {
            "records": len(self.records),
            "name_word_vocabulary": len(self.frequency),
            "has_postings": self.postings is not None,
            "jdk_ratio_quartiles": {
                "[0.00,0.25)": buckets[0],
                "[0.25,0.50)": buckets[1],
                "[0.50,0.75)": buckets[2],
                "[0.75,1.00]": buckets[3],
            },
        }


def search_names(index: NameIndex, pattern: MatchPattern) -> list[int]:
    """Ordinals of records whose name matches, in stored order."""
    names = index.names
    candidates: Iterable[int]
    if index.postings is not None:
        grams: set[str] = set()
        for word in pattern.words:
            grams |= _trigrams(word)
        if grams:
            lists = []
            for gram in grams:
                posting = index.postings.get(gram)
                if posting is None:
                    return []
                lists.append(posting)
            lists.sort(key=len)
            live = set(lists[0])
            for posting in lists[1:]:
                live.intersection_update(posting)
                if not live:
                    return []
            candidates = sorted(live)
        else:
            candidates = range(len(names))
    else:
        candidates = range(len(names))
    return [o for o in candidates if ordered_match(names[o], pattern)]


def build_index(
    records: Iterable[MethodRecord],
    out_dir: Path | str,
    *,
    with_postings: bool = True,
) -> NameIndex:
    """Persist records and sidecar tables; returns the loaded index.

    Deterministic given record order: identical inputs produce byte-identical
    files. Any failure removes partial output before re-raising.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lock = out / _LOCK
    try:
        lock_fd = lock.open("x")
    except FileExistsError:
        raise IndexBuildError(f"another build holds {lock}") from None
    produced = [out / _METHODS, out / _NAMES, out / _POSTINGS, out / _FREQUENCY, out / _META]
    try:
        count = _write_files(records, out, with_postings)
        log.info("indexed %d methods into %s", count, out)
    except Exception:
        for path in produced:
            path.unlink(missing_ok=True)
        raise
    finally:
        lock_fd.close()
        lock.unlink(missing_ok=True)
    return load_index(out)


def _write_files(records: Iterable[MethodRecord], out: Path, with_postings: bool) -> int:
    seen: set[str] = set()
    names: list[str] = []
    raw_names: list[str] = []
    offsets: list[int] = []
    postings: dict[str, array] = {}
    pos = 0
    with (out / _METHODS).open("w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            if rec.method_key in seen:
                raise IndexBuildError(f"duplicate method_key: {rec.method_key}")
            seen.add(rec.method_key)
            line = json.dumps(rec.to_dict(), ensure_ascii=False, separators=(",", ":")) + "\n"
            offsets.append(pos)
            pos += len(line.encode("utf-8"))
            ordinal = len(names)
            names.append(rec.name_lower)
            raw_names.append(rec.name)
            if with_postings:
                for gram in sorted(_trigrams(rec.name_lower)):
                    postings.setdefault(gram, array("I")).append(ordinal)
            fh.write(line)
    with (out / _NAMES).open("w", encoding="utf-8", newline="\n") as fh:
        for off, name in zip(offsets, names):
            fh.write(f"{off}\t{name}\n")
    FrequencyTable.count_names(raw_names).dump(out / _FREQUENCY)
    if with_postings:
        _dump_postings(postings, out / _POSTINGS)
    meta = {
        "format_version": FORMAT_VERSION,
        "records": len(names),
        "postings": with_postings,
    }
    (out / _META).write_text(
        json.dumps(meta, sort_keys=True, separators=(",", ":")) + "\n", encoding="utf-8"
    )
    return len(names)


def _dump_postings(postings: dict[str, array], path: Path) -> None:
    with path.open("wb") as fh:
        fh.write(struct.pack("<I", len(postings)))
        for gram in sorted(postings):
            ordinals = postings[gram]
            blob = gram.encode("utf-8")
            fh.write(struct.pack("<B", len(blob)))
            fh.write(blob)
            fh.write(struct.pack("<I", len(ordinals)))
            fh.write(ordinals.tobytes())


def _load_postings(path: Path) -> dict[str, array]:
    data = path.read_bytes()
    view = memoryview(data)
    (gram_count,) = struct.unpack_from("<I", view, 0)
    at = 4
    postings: dict[str, array] = {}
    for _ in range(gram_count):
        (blob_len,) = struct.unpack_from("<B", view, at)
        at += 1
        gram = bytes(view[at : at + blob_len]).decode("utf-8")
        at += blob_len
        (n,) = struct.unpack_from("<I", view, at)
        at += 4
        ordinals = array("I")
        ordinals.frombytes(bytes(view[at : at + 4 * n]))
        at += 4 * n
        postings[gram] = ordinals
    return postings


def load_index(index_dir: Path | str) -> NameIndex:
    """Load a built index; IndexFormatError on anything unrecognizable."""
    root = Path(index_dir)
    meta_path = root / _META
    if not meta_path.is_file():
        raise IndexFormatError(f"not an index directory (no {_META}): {root}")
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise IndexFormatError(f"unreadable {_META} in {root}: {exc}") from exc
    version = meta.get("format_version")
    if version != FORMAT_VERSION:
        raise IndexFormatError(
            f"unsupported index format_version {version!r} (expected {FORMAT_VERSION})"
        )
    records = list(_read_records(root / _METHODS))
    if len(records) != meta.get("records"):
        raise IndexFormatError(
            f"record count mismatch: meta says {meta.get('records')}, found {len(records)}"
        )
    name_lines = (root / _NAMES).read_text(encoding="utf-8").splitlines()
    if len(name_lines) != len(records):
        raise IndexFormatError("names.idx out of step with methods.jsonl")
    frequency = FrequencyTable.load(root / _FREQUENCY)
    postings = _load_postings(root / _POSTINGS) if meta.get("postings") else None
    return NameIndex(records=records, frequency=frequency, postings=postings)


def _read_records(path: Path) -> Iterator[MethodRecord]:
    try:
        with path.open("r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    yield MethodRecord.from_dict(json.loads(line))
                except (ValueError, KeyError, TypeError) as exc:
                    raise IndexFormatError(f"{path}:{lineno}: bad record: {exc}") from exc
    except OSError as exc:
        raise IndexFormatError(f"cannot read {path}: {exc}") from exc

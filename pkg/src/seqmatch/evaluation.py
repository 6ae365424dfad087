"""Retrieval metrics over a query set with relevance judgments.

FRank is the 1-based position of the first relevant hit in a ranked
list, or None when nothing relevant appears (rendered "NF" in files
and tables). SuccessRate@k, Precision@k and MRR aggregate FRanks and
per-query relevance counts over the whole query set.

Input formats are deliberately plain so hand-labeled data drops in:
queries.tsv   query_id <TAB> query text
judgments.tsv query_id <TAB> method_key <TAB> 0|1
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import QueryError
from .pipeline import DEFAULT_K, SearchEngine

log = logging.getLogger(__name__)

NOT_FOUND = None  # FRank value when no relevant method is returned

DEFAULT_K_VALUES = (1, 5, 10)


class EvalDataError(QueryError):
    """Raised when a queries/judgments file cannot be parsed."""


@dataclass(frozen=True)
class JudgmentSet:
    """Relevance labels plus the ordered query list they refer to."""

    queries: tuple[tuple[str, str], ...]
    entries: Mapping[tuple[str, str], bool] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [qid for qid, _ in self.queries]
        if len(ids) != len(set(ids)):
            dup = sorted({q for q in ids if ids.count(q) > 1})[0]
            raise EvalDataError(f"duplicate query_id {dup!r}")

    def relevant(self, query_id: str, method_key: str) -> bool:
        return bool(self.entries.get((query_id, method_key), False))

    def judged_keys(self) -> set[str]:
        return {key for (_, key) in self.entries}


def load_queries(path: str | Path) -> tuple[tuple[str, str], ...]:
    """Read a query_id<TAB>text file; blank lines and # comments skipped."""
    out: list[tuple[str, str]] = []
    for lineno, line in enumerate(_data_lines(path), start=1):
        parts = line.split("\t", 1)
        if len(parts) != 2 or not parts[0] or not parts[1].strip():
            raise EvalDataError(f"{path}:{lineno}: expected query_id<TAB>text")
        out.append((parts[0], parts[1].strip()))
    return tuple(out)


def load_judgments(path: str | Path, queries: tuple[tuple[str, str], ...]) -> JudgmentSet:
    """Read query_id<TAB>method_key<TAB>{0,1} labels for the given queries."""
    known = {qid for qid, _ in queries}
    entries: dict[tuple[str, str], bool] = {}
    for lineno, line in enumerate(_data_lines(path), start=1):
        parts = line.split("\t")
        if len(parts) != 3 or parts[2] not in ("0", "1"):
            raise EvalDataError(
                f"{path}:{lineno}: expected query_id<TAB>method_key<TAB>0|1"
            )
        qid, key, flag = parts
        if qid not in known:
            raise EvalDataError(f"{path}:{lineno}: unknown query_id {qid!r}")
        entries[(qid, key)] = flag == "1"
    return JudgmentSet(queries=queries, entries=entries)


def _data_lines(path: str | Path) -> Iterable[str]:
    text = Path(path).read_text(encoding="utf-8")
    for raw in text.splitlines():
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield line


def frank(
    ranked_keys: Sequence[str], judgments: JudgmentSet, query_id: str
) -> int | None:
    """1-based rank of the first relevant result, or None if absent."""
    for pos, key in enumerate(ranked_keys, start=1):
        if judgments.relevant(query_id, key):
            return pos
    return NOT_FOUND


def success_rate(franks: Sequence[int | None], k: int) -> float:
    """Fraction of queries whose FRank is within the top k."""
    if not franks:
        return 0.0
    hits = sum(1 for f in franks if f is not None and f <= k)
    return hits / len(franks)


def precision_at(
    ranked: Mapping[str, Sequence[str]], judgments: JudgmentSet, k: int
) -> float:
    """Mean over queries of (#relevant within top-k)/k."""
    if not ranked:
        return 0.0
    total = 0.0
    for qid, keys in ranked.items():
        rel = sum(1 for key in keys[:k] if judgments.relevant(qid, key))
        total += rel / k
    return total / len(ranked)


def mrr(franks: Sequence[int | None], *, not_found_rank: int | None = None) -> float:
    """Mean reciprocal FRank.

    A NotFound query contributes 0 by default. Passing not_found_rank=N
    instead credits such queries 1/N — the convention that treats a miss
    as a hypothetical hit just past the retrieval window.
    """
    if not franks:
        return 0.0
    total = 0.0
    for f in franks:
        if f is not None:
            total += 1.0 / f
        elif not_found_rank is not None:
            total += 1.0 / not_found_rank
    return total / len(franks)


@dataclass(frozen=True)
class MetricsReport:
    """Aggregated metrics for one evaluation run."""

    mode: str
    q: int
    per_query: tuple[tuple[str, int | None], ...]
    sr_at: Mapping[int, float]
    p_at: Mapping[int, float]
    mrr: float

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "q": self.q,
            "mrr": round(self.mrr, 6),
            "sr_at": {str(k): round(v, 6) for k, v in sorted(self.sr_at.items())},
            "p_at": {str(k): round(v, 6) for k, v in sorted(self.p_at.items())},
            "per_query": [
                {"query_id": qid, "frank": f} for qid, f in self.per_query
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        lines = [f"mode={self.mode}  Q={self.q}  MRR={self.mrr:.4f}", ""]
        lines.append("query_id\tfrank")
        for qid, f in self.per_query:
            lines.append(f"{qid}\t{'NF' if f is None else f}")
        lines.append("")
        lines.append("k\tSR@k\tP@k")
        for k in sorted(self.sr_at):
            lines.append(f"{k}\t{self.sr_at[k]:.4f}\t{self.p_at[k]:.4f}")
        return "\n".join(lines) + "\n"


def run_eval(
    engine: SearchEngine,
    queries: tuple[tuple[str, str], ...],
    judgments: JudgmentSet,
    mode: str = "full",
    *,
    k_values: Sequence[int] = DEFAULT_K_VALUES,
) -> MetricsReport:
    """Run every query through the engine and aggregate the metrics.

    Judged method keys that the index does not contain are reported once
    as warnings and simply never match, which is the conservative reading.
    """
    known = {rec.method_key for rec in engine.index.records}
    for key in sorted(judgments.judged_keys() - known):
        log.warning("judgments reference unknown method_key %s", key)

    k_max = max((*k_values, DEFAULT_K))
    ranked: dict[str, list[str]] = {}
    franks: list[tuple[str, int | None]] = []
    for qid, text in queries:
        keys = engine.ranked_keys(text, k=k_max, mode=mode)
        ranked[qid] = keys
        franks.append((qid, frank(keys[:DEFAULT_K], judgments, qid)))

    flat = [f for _, f in franks]
    return MetricsReport(
        mode=mode,
        q=len(queries),
        per_query=tuple(franks),
        sr_at={k: success_rate(flat, k) for k in k_values},
        p_at={k: precision_at(ranked, judgments, k) for k in k_values},
        mrr=mrr(flat),
    )

"""Query understanding, iterative fuzzy search, and reranking.

The three-step flow:

1. understand_query strips question words, auxiliaries, and the
   programming-language phrase, classifies what remains, substitutes
   synonyms for words the corpus has never seen, stems, and emits the
   word-drop schedule as ordered match patterns.
2. iterative_search runs the patterns in order, accumulating a deduplicated
   candidate pool until it exceeds pool_min or the schedule runs out.
3. rerank orders candidates by the two matching scores.

Scoring denominators use Nq = number of base words, counted after
question-word/phrase removal but before the part-of-speech filter.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import QueryError
from .extractor import MethodRecord
from .index import MatchPattern, NameIndex
from .lexicons import (
    SEARCHABLE_PROPERTIES,
    Lexicons,
    TokenMetadata,
    WordProperty,
    classify_word,
    importance_level,
    synonym_substitute,
)
from .stemmer import stem

QUESTION_WORDS = frozenset({"how", "what", "why", "when", "where", "which", "who"})
AUXILIARIES = frozenset({"do", "does", "did", "can", "could", "should", "would", "is", "are", "i"})

RERANK_MODES = ("full", "no_sbody", "no_rerank")
DEFAULT_POOL_MIN = 10
DEFAULT_K = 10

_TOKEN_RE = re.compile(r"[a-z0-9_$]+")


@dataclass(frozen=True, slots=True)
class QueryPlan:
    raw_query: str
    base_words: tuple[str, ...]
    kept_words: tuple[TokenMetadata, ...]
    patterns: tuple[MatchPattern, ...]

    @property
    def nq(self) -> int:
        return len(self.base_words)


@dataclass(frozen=True, slots=True)
class ScoredResult:
    method_key: str
    s_name: float
    s_body: float
    round: int
    rank: int


@dataclass(frozen=True, slots=True)
class Candidate:
    """Pool entry: which record, and the earliest round that found it."""

    ordinal: int
    round: int


def understand_query(raw: str, lexicons: Lexicons) -> QueryPlan:
    """Build the QueryPlan; QueryError when nothing searchable remains."""
    if not raw or not raw.strip():
        raise QueryError("empty query")
    tokens = _TOKEN_RE.findall(raw.lower())
    base: list[str] = []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok in ("in", "using") and i + 1 < len(tokens) and tokens[i + 1] == "java":
            i += 2
            continue
        if tok == "java" or tok in QUESTION_WORDS or tok in AUXILIARIES:
            i += 1
            continue
        base.append(tok)
        i += 1
    if not base:
        raise QueryError("no searchable words")
    kept: list[TokenMetadata] = []
    for word in base:
        prop = classify_word(word, lexicons.pos)
        if prop not in SEARCHABLE_PROPERTIES:
            continue
        stemmed = stem(word)
        token = synonym_substitute(stemmed, lexicons.frequency, lexicons.synonyms)
        is_jdk_noun = prop is WordProperty.NOUN and (
            lexicons.jdk.is_jdk_word(word) or lexicons.jdk.is_jdk_word(stemmed)
        )
        kept.append(
            TokenMetadata(
                token=token,
                raw=word,
                property=prop,
                frequency=lexicons.frequency.get(token),
                importance=importance_level(prop, is_jdk_noun),
            )
        )
    if not kept:
        raise QueryError("no searchable words")
    return QueryPlan(
        raw_query=raw,
        base_words=tuple(base),
        kept_words=tuple(kept),
        patterns=tuple(_drop_schedule(kept)),
    )


def _drop_schedule(kept: Sequence[TokenMetadata]) -> list[MatchPattern]:
    """Patterns from all kept words down to one, dropping the least
    important lowest-frequency word each round, rightmost on ties."""
    live = list(kept)
    patterns = [MatchPattern(tuple(t.token for t in live))]
    while len(live) > 1:
        victim = min(
            range(len(live)),
            key=lambda p: (live[p].importance, live[p].frequency, -p),
        )
        live.pop(victim)
        patterns.append(MatchPattern(tuple(t.token for t in live)))
    return patterns


def iterative_search(
    plan: QueryPlan, index: NameIndex, pool_min: int = DEFAULT_POOL_MIN
) -> list[Candidate]:
    """Accumulate matches round by round until the pool exceeds pool_min.

    Dedup: a method seen in an earlier round keeps its earliest round tag;
    content-hash clones collapse to their first occurrence.
    """
    seen_keys: set[str] = set()
    seen_hashes: set[str] = set()
    pool: list[Candidate] = []
    for round_no, pattern in enumerate(plan.patterns, start=1):
        for ordinal in index.search(pattern):
            rec = index.records[ordinal]
            if rec.method_key in seen_keys:
                continue
            seen_keys.add(rec.method_key)
            if rec.content_hash in seen_hashes:
                continue
            seen_hashes.add(rec.content_hash)
            pool.append(Candidate(ordinal=ordinal, round=round_no))
        if len(pool) > pool_min:
            break
    return pool


def score_name(plan: QueryPlan, record: MethodRecord) -> float:
    """(m/Nq) x (c/len(name)): matched word count, then matched characters.

    The alignment places kept words in the name as in-order non-overlapping
    substrings. Dynamic programming over (word index, name position) picks
    the subset maximizing word count first, character total second; each
    matched word sits at its leftmost feasible position, which never hurts
    either objective.
    """
    words = tuple(t.token for t in plan.kept_words)
    name = record.name_lower
    if not words or not name or plan.nq == 0:
        return 0.0
    m, c = _align(words, name)
    if m == 0:
        return 0.0
    return (m / plan.nq) * (c / len(name))


def _align(words: tuple[str, ...], name: str) -> tuple[int, int]:
    @lru_cache(maxsize=None)
    def best(i: int, pos: int) -> tuple[int, int]:
        if i == len(words):
            return (0, 0)
        skip = best(i + 1, pos)
        hit = name.find(words[i], pos)
        if hit < 0:
            return skip
        m, c = best(i + 1, hit + len(words[i]))
        take = (m + 1, c + len(words[i]))
        return max(take, skip)

    result = best(0, 0)
    best.cache_clear()
    return result


def score_body(plan: QueryPlan, record: MethodRecord) -> float:
    """Product of Eq.-(2) terms: word coverage x order agreement x JDK share."""
    apis = record.api_sequence
    if not apis or plan.nq == 0:
        return 0.0
    words = tuple(t.token for t in plan.kept_words)
    simples = [a.simple.lower() for a in apis]
    matched = {w for w in words if any(w in s for s in simples)}
    term1 = len(matched) / plan.nq
    term2 = _lcs_matches(words, simples) / plan.nq
    term3 = sum(1 for a in apis if a.is_jdk) / len(apis)
    return term1 * term2 * term3


def _lcs_matches(words: Sequence[str], simples: Sequence[str]) -> int:
    """Longest common subsequence under "word is substring of api.simple"."""
    rows = len(words)
    cols = len(simples)
    prev = [0] * (cols + 1)
    for r in range(1, rows + 1):
        cur = [0] * (cols + 1)
        word = words[r - 1]
        for c in range(1, cols + 1):
            if word in simples[c - 1]:
                cur[c] = prev[c - 1] + 1
            else:
                cur[c] = max(prev[c], cur[c - 1])
        prev = cur
    return prev[cols]


def rerank(
    candidates: Sequence[Candidate],
    plan: QueryPlan,
    index: NameIndex,
    mode: str = "full",
    k: int = DEFAULT_K,
) -> list[ScoredResult]:
    """Score and order the pool; truncate to k.

    full      — (s_name desc, s_body desc, round asc, name length, key)
    no_sbody  — same without the s_body component
    no_rerank — discovery order (round asc, stored order)
    """
    if mode not in RERANK_MODES:
        raise QueryError(f"unknown rerank mode: {mode!r} (choose from {RERANK_MODES})")
    scored: list[tuple[Candidate, float, float]] = []
    for cand in candidates:
        rec = index.records[cand.ordinal]
        scored.append((cand, score_name(plan, rec), score_body(plan, rec)))
    if mode == "full":
        scored.sort(
            key=lambda e: (
                -e[1],
                -e[2],
                e[0].round,
                len(index.records[e[0].ordinal].name),
                index.records[e[0].ordinal].method_key,
            )
        )
    elif mode == "no_sbody":
        scored.sort(
            key=lambda e: (
                -e[1],
                e[0].round,
                len(index.records[e[0].ordinal].name),
                index.records[e[0].ordinal].method_key,
            )
        )
    results = []
    for rank, (cand, s_name, s_body) in enumerate(scored[:k], start=1):
        results.append(
            ScoredResult(
                method_key=index.records[cand.ordinal].method_key,
                s_name=s_name,
                s_body=s_body,
                round=cand.round,
                rank=rank,
            )
        )
    return results


class SearchEngine:
    """Facade tying one loaded index to the lexicons and the three steps."""

    def __init__(
        self,
        index: NameIndex,
        lexicons: Lexicons,
        pool_min: int = DEFAULT_POOL_MIN,
    ):
        self.index = index
        self.lexicons = lexicons.with_frequency(index.frequency)
        self.pool_min = pool_min
        self._by_key = {r.method_key: r for r in index.records}

    def plan(self, query: str) -> QueryPlan:
        return understand_query(query, self.lexicons)

    def search(self, query: str, k: int = DEFAULT_K, mode: str = "full"):
        plan = self.plan(query)
        pool = iterative_search(plan, self.index, pool_min=self.pool_min)
        return plan, rerank(pool, plan, self.index, mode=mode, k=k)

    def record(self, method_key: str) -> MethodRecord:
        return self._by_key[method_key]

    def ranked_keys(self, query: str, k: int = DEFAULT_K, mode: str = "full") -> list[str]:
        try:
            _, results = self.search(query, k=k, mode=mode)
        except QueryError:
            return []
        return [r.method_key for r in results]

    def render_payload(self, plan: QueryPlan, results: Iterable[ScoredResult]) -> dict:
        """The one result shape every surface serves (CLI and HTTP alike)."""
        return {
            "query": plan.raw_query,
            "plan": {
                "base_words": list(plan.base_words),
                "kept_words": [
                    {
                        "token": t.token,
                        "property": t.property.value,
                        "frequency": t.frequency,
                        "importance": t.importance,
                    }
                    for t in plan.kept_words
                ],
                "patterns": [p.wildcard for p in plan.patterns],
            },
            "results": [self._result_entry(r) for r in results],
        }

    def _result_entry(self, result: ScoredResult) -> dict:
        rec = self._by_key[result.method_key]
        return {
            "rank": result.rank,
            "method_key": result.method_key,
            "method_name": rec.name,
            "s_name": round(result.s_name, 6),
            "s_body": round(result.s_body, 6),
            "round": result.round,
            "repo": rec.repo_id,
            "path": rec.rel_path,
            "snippet": "\n".join(rec.body_text.splitlines()[:10]),
        }


def to_json(payload: dict) -> str:
    """Canonical JSON rendering shared by the CLI and the HTTP service."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"

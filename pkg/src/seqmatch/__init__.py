"""seqmatch: search Java methods by the sequential order of important query words.

The pipeline has three steps: collect metadata for query words (part of
speech, corpus frequency, importance), iteratively fuzzy-search indexed
method names with ordered wildcard patterns that drop the least
important word each round, and rerank the candidate pool by how well
names and API usage sequences align with the query.
"""

from .errors import (
    IndexBuildError,
    IndexFormatError,
    IngestError,
    QueryError,
    SeqmatchError,
)
from .evaluation import (
    JudgmentSet,
    MetricsReport,
    frank,
    load_judgments,
    load_queries,
    mrr,
    precision_at,
    run_eval,
    success_rate,
)
from .extractor import ApiToken, MethodRecord, extract_methods
from .index import MatchPattern, NameIndex, build_index, load_index, ordered_match
from .ingest import (
    IngestStats,
    RepoSpec,
    SourceFile,
    discover_repos,
    stream_sources,
)
from .lexicons import (
    FrequencyTable,
    Lexicons,
    TokenMetadata,
    WordProperty,
    load_default_lexicons,
)
from .pipeline import (
    QueryPlan,
    ScoredResult,
    SearchEngine,
    iterative_search,
    rerank,
    score_body,
    score_name,
    to_json,
    understand_query,
)

__version__ = "0.1.0"

__all__ = [
    "ApiToken",
    "FrequencyTable",
    "IndexBuildError",
    "IndexFormatError",
    "IngestError",
    "IngestStats",
    "JudgmentSet",
    "Lexicons",
    "MatchPattern",
    "MethodRecord",
    "MetricsReport",
    "NameIndex",
    "QueryError",
    "QueryPlan",
    "RepoSpec",
    "ScoredResult",
    "SearchEngine",
    "SeqmatchError",
    "SourceFile",
    "TokenMetadata",
    "WordProperty",
    "__version__",
    "build_index",
    "discover_repos",
    "extract_methods",
    "frank",
    "iterative_search",
    "load_default_lexicons",
    "load_index",
    "load_judgments",
    "load_queries",
    "mrr",
    "ordered_match",
    "precision_at",
    "rerank",
    "run_eval",
    "score_body",
    "score_name",
    "stream_sources",
    "success_rate",
    "to_json",
    "understand_query",
]

"""Command-line entrypoints: index, search, eval, serve, stats.

Exit codes: 0 success, 1 usage error, 2 data or index error. The index
directory defaults to $SEQMATCH_INDEX so scripts can omit --index.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import IndexBuildError, IndexFormatError, IngestError, QueryError
from .evaluation import load_judgments, load_queries, run_eval
from .extractor import extract_methods
from .index import NameIndex, build_index, load_index
from .ingest import DEFAULT_MAX_FILE_BYTES, IngestStats, discover_repos, stream_sources
from .lexicons import Lexicons, load_default_lexicons
from .pipeline import DEFAULT_K, DEFAULT_POOL_MIN, RERANK_MODES, SearchEngine, to_json

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

ENV_INDEX = "SEQMATCH_INDEX"


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 1."""


@dataclass(frozen=True)
class AppConfig:
    """Resolved runtime settings shared by the subcommands."""

    index_dir: Path | None
    k: int = DEFAULT_K
    pool_min: int = DEFAULT_POOL_MIN
    mode: str = "full"
    port: int = 8080
    pos_lexicon: Path | None = None
    synonyms: Path | None = None
    jdk_catalog: Path | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise UsageError("k must be >= 1")
        if self.pool_min < 1:
            raise UsageError("pool-min must be >= 1")
        if self.mode not in RERANK_MODES:
            raise UsageError(f"mode must be one of {', '.join(RERANK_MODES)}")

    def require_index_dir(self) -> Path:
        if self.index_dir is None:
            raise UsageError(f"no index directory: pass --index or set ${ENV_INDEX}")
        return self.index_dir

    def lexicons(self) -> Lexicons:
        return load_default_lexicons(
            pos_path=self.pos_lexicon,
            synonyms_path=self.synonyms,
            jdk_path=self.jdk_catalog,
        )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage problems; usage
        # problems are exit code 1 in this tool
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = _resolve_config(args)
        return args.func(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestError, IndexBuildError, IndexFormatError, QueryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqmatch",
        description="Search Java methods by the sequential order of important query words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_index = sub.add_parser("index", help="ingest repositories and build an index")
    p_index.add_argument("roots", nargs="*", help="directories holding repositories")
    p_index.add_argument("--out", required=True, help="output index directory")
    p_index.add_argument("--config", help="JSON config: roots, max_file_bytes, exclude")
    p_index.add_argument("--max-file-bytes", type=int, default=None)
    p_index.add_argument("--exclude", action="append", default=None, metavar="GLOB")
    p_index.set_defaults(func=cmd_index)

    p_search = sub.add_parser("search", help="run one query against an index")
    p_search.add_argument("query")
    p_search.add_argument("--json", action="store_true", help="print the full JSON payload")
    p_search.add_argument("--timing", action="store_true", help="report elapsed time on stderr")
    _common_flags(p_search)
    p_search.set_defaults(func=cmd_search)

    p_eval = sub.add_parser("eval", help="compute metrics over a judged query set")
    p_eval.add_argument("--queries", required=True, help="TSV: query_id<TAB>text")
    p_eval.add_argument("--judgments", required=True, help="TSV: query_id<TAB>method_key<TAB>0|1")
    p_eval.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    p_eval.add_argument("--out", help="also write the JSON report to this file")
    _common_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_serve = sub.add_parser("serve", help="serve the index over HTTP")
    p_serve.add_argument("--port", type=int, default=8080)
    _common_flags(p_serve)
    p_serve.set_defaults(func=cmd_serve)

    p_stats = sub.add_parser("stats", help="print index statistics")
    p_stats.add_argument("--json", action="store_true")
    _common_flags(p_stats)
    p_stats.set_defaults(func=cmd_stats)

    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--index", help=f"index directory (default: ${ENV_INDEX})")
    p.add_argument("--k", type=int, default=DEFAULT_K, help="results to return")
    p.add_argument("--pool-min", type=int, default=DEFAULT_POOL_MIN,
                   help="stop searching once the candidate pool exceeds this")
    p.add_argument("--mode", default="full", help="full | no_sbody | no_rerank")
    p.add_argument("--pos-lexicon", help="override the bundled POS lexicon")
    p.add_argument("--synonyms", help="override the bundled synonym table")
    p.add_argument("--jdk-catalog", help="override the bundled JDK catalog")


def _resolve_config(args: argparse.Namespace) -> AppConfig:
    index_dir = getattr(args, "index", None) or os.environ.get(ENV_INDEX)
    return AppConfig(
        index_dir=Path(index_dir) if index_dir else None,
        k=getattr(args, "k", DEFAULT_K),
        pool_min=getattr(args, "pool_min", DEFAULT_POOL_MIN),
        mode=getattr(args, "mode", "full"),
        port=getattr(args, "port", 8080),
        pos_lexicon=_maybe_path(getattr(args, "pos_lexicon", None)),
        synonyms=_maybe_path(getattr(args, "synonyms", None)),
        jdk_catalog=_maybe_path(getattr(args, "jdk_catalog", None)),
    )


def _maybe_path(value: str | None) -> Path | None:
    return Path(value) if value else None


def cmd_index(args: argparse.Namespace, config: AppConfig) -> int:
    file_cfg = _load_file_config(args.config) if args.config else {}
    roots = list(args.roots) or list(file_cfg.get("roots", []))
    if not roots:
        raise UsageError("no repository roots given (positional args or config 'roots')")
    max_bytes = args.max_file_bytes or file_cfg.get("max_file_bytes") or DEFAULT_MAX_FILE_BYTES
    exclude = tuple(args.exclude if args.exclude is not None else file_cfg.get("exclude", ()))

    start = time.perf_counter()
    lexicons = config.lexicons()
    stats = IngestStats()
    records = []
    for repo in discover_repos([Path(r) for r in roots]):
        for source in stream_sources(repo, max_file_bytes=max_bytes, exclude=exclude, stats=stats):
            records.extend(extract_methods(source, lexicons.jdk))
    index = build_index(records, Path(args.out))
    elapsed = time.perf_counter() - start

    print(f"files: {stats.yielded} indexed, "
          f"{stats.skipped_oversize + stats.skipped_unreadable + stats.skipped_excluded} skipped "
          f"({stats.skipped_oversize} oversize, {stats.skipped_unreadable} unreadable, "
          f"{stats.skipped_excluded} excluded)")
    print(f"methods: {len(index)}")
    print(f"elapsed: {elapsed:.2f}s")
    return EXIT_OK


def _load_file_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


def _load_engine(config: AppConfig) -> SearchEngine:
    index = load_index(config.require_index_dir())
    return SearchEngine(index, config.lexicons(), pool_min=config.pool_min)


def cmd_search(args: argparse.Namespace, config: AppConfig) -> int:
    engine = _load_engine(config)
    start = time.perf_counter()
    plan, results = engine.search(args.query, k=config.k, mode=config.mode)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    if args.json:
        sys.stdout.write(to_json(engine.render_payload(plan, results)))
    else:
        print(f"# {len(results)} results for: {args.query}")
        print("rank\ts_name\ts_body\tname\tpath")
        for r in results:
            rec = engine.record(r.method_key)
            print(f"{r.rank}\t{r.s_name:.4f}\t{r.s_body:.4f}\t{rec.name}\t"
                  f"{rec.repo_id}/{rec.rel_path}:{rec.start_line}")
    if args.timing:
        print(f"search: {elapsed_ms:.1f} ms", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, config: AppConfig) -> int:
    engine = _load_engine(config)
    queries = load_queries(args.queries)
    judgments = load_judgments(args.judgments, queries)
    report = run_eval(engine, queries, judgments, config.mode)
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="utf-8")
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_serve(args: argparse.Namespace, config: AppConfig) -> int:
    from .server import make_server  # deferred so search/eval stay light

    engine = _load_engine(config)
    httpd = make_server(engine, config.port, default_k=config.k)
    host, port = httpd.server_address[:2]
    print(f"serving {len(engine.index)} methods on http://{host}:{port}")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return EXIT_OK


def cmd_stats(args: argparse.Namespace, config: AppConfig) -> int:
    index = load_index(config.require_index_dir())
    stats = index.stats()
    if args.json:
        sys.stdout.write(json.dumps(stats, indent=2, sort_keys=True) + "\n")
    else:
        print(f"records: {stats['records']}")
        print(f"name word vocabulary: {stats['name_word_vocabulary']}")
        print(f"postings: {'yes' if stats['has_postings'] else 'no'}")
        print(f"jdk ratio quartiles: {stats['jdk_ratio_quartiles']}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())

"""Run the evaluation harness over the bundled judged corpus.

Loads the query/judgment TSVs, builds an index over the 50-method
fixture corpus, and compares the three rerank modes side by side.
The no_rerank mode keeps raw discovery order, so queries whose
round-1 pattern also matches a longer decoy name lose the top slot.
"""

import tempfile
from pathlib import Path

from seqmatch import (
    SearchEngine,
    build_index,
    discover_repos,
    extract_methods,
    load_default_lexicons,
    load_judgments,
    load_queries,
    run_eval,
    stream_sources,
)

ROOT = Path(__file__).parent.parent / "tests" / "fixtures" / "judged"
MODES = ("full", "no_sbody", "no_rerank")

lexicons = load_default_lexicons()
records = []
for repo in discover_repos([ROOT]):
    for src in stream_sources(repo):
        records.extend(extract_methods(src, lexicons.jdk))

index = build_index(records, Path(tempfile.mkdtemp()) / "idx")
engine = SearchEngine(index, lexicons)

queries = load_queries(ROOT / "queries.tsv")
judgments = load_judgments(ROOT / "judgments.tsv", queries)

reports = {mode: run_eval(engine, queries, judgments, mode) for mode in MODES}

print(f"corpus: {len(index)} methods, {len(queries)} judged queries\n")

# per-query FRank table across modes
header = f"{'query':42s}" + "".join(f"{m:>11s}" for m in MODES)
print(header)
print("-" * len(header))
by_id = dict(queries)
for qid, _ in queries:
    cells = ""
    for mode in MODES:
        fr = dict(reports[mode].per_query)[qid]
        cells += f"{'NF' if fr is None else fr:>11}"
    print(f"{qid + '  ' + by_id[qid]:42s}{cells}")

print()
for mode in MODES:
    rep = reports[mode]
    sr = "  ".join(f"SR@{k}={v:.2f}" for k, v in sorted(rep.sr_at.items()))
    print(f"{mode:10s} MRR={rep.mrr:.4f}  {sr}")

"""Index the sample corpus and run one query against it.

Usage: python demos/02_search.py ["your query"]
"""

import sys
import tempfile
from pathlib import Path

from seqmatch import SearchEngine, build_index, discover_repos, extract_methods, load_default_lexicons, stream_sources

query = sys.argv[1] if len(sys.argv) > 1 else "convert an inputstream to a string"
corpus = Path(__file__).parent.parent / "tests" / "fixtures" / "judged"

lexicons = load_default_lexicons()
records = []
for repo in discover_repos([corpus]):
    for source in stream_sources(repo):
        records.extend(extract_methods(source, lexicons.jdk))
index = build_index(records, Path(tempfile.mkdtemp()) / "idx")
engine = SearchEngine(index, lexicons)

plan, results = engine.search(query)

print(f"query: {query}")
print(f"kept words: {[t.token for t in plan.kept_words]}")
for i, pattern in enumerate(plan.patterns, start=1):
    print(f"  round {i}: {pattern.wildcard}")
print()
for r in results:
    rec = engine.record(r.method_key)
    print(f"{r.rank:2d}. {rec.name}  (s_name={r.s_name:.4f} s_body={r.s_body:.4f} round={r.round})")
    print(f"    {rec.repo_id}/{rec.rel_path}:{rec.start_line}")

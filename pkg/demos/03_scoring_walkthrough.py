"""Walk through the three pipeline steps on the two-method example.

Shows the metadata the query planner collects, the wildcard patterns the
drop schedule produces, and how the name/body scores are assembled for
each candidate, ending with the final ranking.
"""

import tempfile
from pathlib import Path

from seqmatch import (
    SearchEngine,
    build_index,
    extract_methods,
    load_default_lexicons,
    score_body,
    score_name,
)
from seqmatch.ingest import SourceFile

GOLDEN = Path(__file__).parent.parent / "tests" / "fixtures" / "golden" / "streamlib"
QUERY = "convert an inputstream to a string"

lexicons = load_default_lexicons()
records = []
for path in sorted(GOLDEN.glob("*.java")):
    src = SourceFile("streamlib", path.name, path.read_text(), 0)
    records.extend(extract_methods(src, lexicons.jdk))

index = build_index(records, Path(tempfile.mkdtemp()) / "idx")
engine = SearchEngine(index, lexicons)
plan = engine.plan(QUERY)

print(f"query: {QUERY!r}")
print(f"\nstep 1 - metadata (Nq = {plan.nq} base words: {' '.join(plan.base_words)})")
print(f"{'token':14s} {'property':12s} {'freq':>5s} {'importance':>10s}")
for t in plan.kept_words:
    print(f"{t.token:14s} {t.property.value:12s} {t.frequency:5d} {t.importance:10d}")

print("\nstep 2 - iterative fuzzy search (drop schedule)")
for i, pattern in enumerate(plan.patterns, start=1):
    print(f"  {i}. {pattern.wildcard}")

print("\nstep 3 - rerank")
for rec in index.records:
    sn = score_name(plan, rec)
    sb = score_body(plan, rec)
    print(f"\n  {rec.name}")
    print(f"    api sequence ({len(rec.api_sequence)} tokens):")
    for tok in rec.api_sequence:
        marker = "jdk" if tok.is_jdk else "  -"
        print(f"      [{marker}] {tok.qualified}")
    print(f"    s_name = {sn:.6f}   s_body = {sb:.6f}")

print("\nfinal ranking:")
_, results = engine.search(QUERY)
for r in results:
    print(f"  {r.rank}. {engine.record(r.method_key).name}"
          f"  (s_name={r.s_name:.4f}, s_body={r.s_body:.4f})")

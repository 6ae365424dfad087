"""Build a search index from a directory of repositories."""

import sys
import tempfile
from pathlib import Path

from seqmatch import IngestStats, build_index, discover_repos, extract_methods, load_default_lexicons, stream_sources

root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent.parent / "tests" / "fixtures" / "judged"
out = Path(sys.argv[2]) if len(sys.argv) > 2 else Path(tempfile.mkdtemp(prefix="seqmatch-"))

lexicons = load_default_lexicons()
stats = IngestStats()
records = []
for repo in discover_repos([root]):
    print(f"repo {repo.repo_id}")
    for source in stream_sources(repo, stats=stats):
        methods = extract_methods(source, lexicons.jdk)
        records.extend(methods)
        print(f"  {source.rel_path}: {len(methods)} methods")

index = build_index(records, out / "idx")
print()
print(f"indexed {len(index)} methods from {stats.yielded} files -> {out / 'idx'}")
print(f"name-word vocabulary: {len(index.frequency)}")

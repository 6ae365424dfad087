"""Start the HTTP service on an ephemeral port and query it.

Same engine the `seqmatch serve` subcommand wraps; here we run it on a
background thread, hit /healthz and /search with urllib, and shut it
down. Responses are byte-identical to `seqmatch search --json`.
"""

import json
import tempfile
import threading
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path

from seqmatch import SearchEngine, build_index, load_default_lexicons
from seqmatch.ingest import discover_repos, stream_sources
from seqmatch.extractor import extract_methods
from seqmatch.server import make_server

ROOT = Path(__file__).parent.parent / "tests" / "fixtures" / "judged"

lexicons = load_default_lexicons()
records = []
for repo in discover_repos([ROOT]):
    for src in stream_sources(repo):
        records.extend(extract_methods(src, lexicons.jdk))
index = build_index(records, Path(tempfile.mkdtemp()) / "idx")
engine = SearchEngine(index, lexicons)

server = make_server(engine, 0)  # port 0: let the OS pick one
port = server.server_address[1]
thread = threading.Thread(target=server.serve_forever, daemon=True)
thread.start()
print(f"serving on http://127.0.0.1:{port}\n")


def get(path):
    url = f"http://127.0.0.1:{port}{path}"
    try:
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.read().decode("utf-8")
    except urllib.error.HTTPError as err:
        return err.code, err.read().decode("utf-8")


status, body = get("/healthz")
print(f"GET /healthz -> {status}")
print(body)

q = urllib.parse.quote("open database connection")
status, body = get(f"/search?q={q}&k=3")
print(f"GET /search?q=open+database+connection&k=3 -> {status}")
payload = json.loads(body)
for r in payload["results"]:
    print(f"  {r['rank']}. {r['method_name']}  s_name={r['s_name']:.4f}")

status, body = get("/search")
print(f"\nGET /search (no query) -> {status}")
print(body.strip())

server.shutdown()
server.server_close()
thread.join()
print("\nserver stopped")

"""Read-only JSON-over-HTTP search endpoint.

GET /search?q=<urlencoded>&k=<n>&mode=<m>  ranked results as JSON
GET /healthz                               {"status": "ok", "methods": N}

The response body for /search is byte-identical to `seqmatch search
--json` for the same (query, k, mode): both go through the same payload
renderer. The index is immutable after load, so requests are served
concurrently without locking.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlsplit

from .errors import QueryError
from .pipeline import DEFAULT_K, RERANK_MODES, SearchEngine, to_json

log = logging.getLogger(__name__)


def make_server(engine: SearchEngine, port: int, *, default_k: int = DEFAULT_K) -> ThreadingHTTPServer:
    """Bind a threading HTTP server for the engine; caller runs it."""

    class Handler(BaseHTTPRequestHandler):
        server_version = "seqmatch"

        def do_GET(self) -> None:  # noqa: N802 (http.server API)
            parts = urlsplit(self.path)
            if parts.path == "/healthz":
                self._send(200, _json_bytes({"status": "ok", "methods": len(engine.index)}))
            elif parts.path == "/search":
                self._search(parse_qs(parts.query))
            else:
                self._send(404, _json_bytes({"error": f"no such path {parts.path}"}))

        def _search(self, params: dict[str, list[str]]) -> None:
            if "q" not in params or not params["q"][0].strip():
                self._send(400, _json_bytes({"error": "missing query parameter q"}))
                return
            query = params["q"][0]
            try:
                k = int(params.get("k", [str(default_k)])[0])
                if k < 1:
                    raise ValueError
            except ValueError:
                self._send(400, _json_bytes({"error": "k must be a positive integer"}))
                return
            mode = params.get("mode", ["full"])[0]
            if mode not in RERANK_MODES:
                self._send(400, _json_bytes({"error": f"unknown mode {mode!r}"}))
                return
            try:
                plan, results = engine.search(query, k=k, mode=mode)
            except QueryError as exc:
                self._send(400, _json_bytes({"error": str(exc)}))
                return
            body = to_json(engine.render_payload(plan, results)).encode("utf-8")
            self._send(200, body)

        def _send(self, status: int, body: bytes) -> None:
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def log_message(self, fmt: str, *args) -> None:
            log.debug("%s %s", self.address_string(), fmt % args)

    httpd = ThreadingHTTPServer(("", port), Handler)
    httpd.daemon_threads = True
    return httpd


def _json_bytes(obj: dict) -> bytes:
    return (json.dumps(obj, ensure_ascii=False) + "\n").encode("utf-8")

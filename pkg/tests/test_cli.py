"""CLI and HTTP service tests, including the byte-identity contract."""

from __future__ import annotations

import json
import threading
import urllib.error
import urllib.parse
import urllib.request
from pathlib import Path

import pytest

from seqmatch.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main
from seqmatch.index import load_index
from seqmatch.lexicons import load_default_lexicons
from seqmatch.pipeline import SearchEngine
from seqmatch.server import make_server

GOLDEN_ROOT = Path(__file__).parent / "fixtures" / "golden"
QUERY = "convert an inputstream to a string"


@pytest.fixture(scope="module")
def index_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli") / "idx"
    code = main(["index", str(GOLDEN_ROOT), "--out", str(out)])
    assert code == EXIT_OK
    return out


class TestIndexCommand:
    def test_reports_counts(self, tmp_path, capsys):
        out = tmp_path / "idx"
        assert main(["index", str(GOLDEN_ROOT), "--out", str(out)]) == EXIT_OK
        text = capsys.readouterr().out
        assert "files: 2 indexed" in text
        assert "methods: 2" in text
        assert "elapsed:" in text

    def test_config_file_supplies_roots_and_excludes(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "roots": [str(GOLDEN_ROOT)],
            "exclude": ["Legacy*"],
            "max_file_bytes": 1 << 20,
        }))
        out = tmp_path / "idx"
        assert main(["index", "--config", str(cfg), "--out", str(out)]) == EXIT_OK
        text = capsys.readouterr().out
        assert "files: 1 indexed" in text
        assert "1 excluded" in text
        assert len(load_index(out)) == 1

    def test_no_roots_is_usage_error(self, tmp_path, capsys):
        assert main(["index", "--out", str(tmp_path / "x")]) == EXIT_USAGE
        assert "no repository roots" in capsys.readouterr().err

    def test_bad_config_is_usage_error(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        code = main(["index", "--config", str(cfg), "--out", str(tmp_path / "x")])
        assert code == EXIT_USAGE

    def test_missing_root_is_data_error(self, tmp_path, capsys):
        code = main(["index", str(tmp_path / "ghost"), "--out", str(tmp_path / "x")])
        assert code == EXIT_DATA


class TestSearchCommand:
    def test_table_output(self, index_dir, capsys):
        assert main(["search", QUERY, "--index", str(index_dir)]) == EXIT_OK
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == f"# 2 results for: {QUERY}"
        assert lines[1] == "rank\ts_name\ts_body\tname\tpath"
        assert lines[2].startswith("1\t0.6667\t0.2500\tconvertInputStreamToString")
        assert lines[3].startswith("2\t0.4800\t0.1111\tconvertInputStream2String")

    def test_json_output(self, index_dir, capsys):
        assert main(["search", QUERY, "--index", str(index_dir), "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["results"][0]["method_name"] == "convertInputStreamToString"

    def test_env_var_supplies_index(self, index_dir, capsys, monkeypatch):
        monkeypatch.setenv("SEQMATCH_INDEX", str(index_dir))
        assert main(["search", QUERY]) == EXIT_OK
        assert "convertInputStreamToString" in capsys.readouterr().out

    def test_no_index_is_usage_error(self, capsys, monkeypatch):
        monkeypatch.delenv("SEQMATCH_INDEX", raising=False)
        assert main(["search", QUERY]) == EXIT_USAGE
        assert "SEQMATCH_INDEX" in capsys.readouterr().err

    def test_missing_index_dir_is_data_error(self, tmp_path, capsys):
        assert main(["search", QUERY, "--index", str(tmp_path / "nope")]) == EXIT_DATA

    def test_unsearchable_query_is_data_error(self, index_dir, capsys):
        assert main(["search", "java", "--index", str(index_dir)]) == EXIT_DATA
        assert "no searchable words" in capsys.readouterr().err

    def test_bad_k_is_usage_error(self, index_dir, capsys):
        assert main(["search", QUERY, "--index", str(index_dir), "--k", "0"]) == EXIT_USAGE

    def test_bad_mode_is_usage_error(self, index_dir, capsys):
        code = main(["search", QUERY, "--index", str(index_dir), "--mode", "fancy"])
        assert code == EXIT_USAGE

    def test_timing_goes_to_stderr(self, index_dir, capsys):
        code = main(["search", QUERY, "--index", str(index_dir), "--json", "--timing"])
        assert code == EXIT_OK
        captured = capsys.readouterr()
        assert "ms" in captured.err
        json.loads(captured.out)  # stdout stays pure JSON


class TestEvalCommand:
    def _write_data(self, tmp_path):
        qp = tmp_path / "queries.tsv"
        jp = tmp_path / "judgments.tsv"
        qp.write_text(f"q1\t{QUERY}\nq2\topen database cursor\n")
        jp.write_text("q1\tstreamlib#StreamUtils.java#9\t1\n")
        return qp, jp

    def test_text_report(self, index_dir, tmp_path, capsys):
        qp, jp = self._write_data(tmp_path)
        code = main(["eval", "--queries", str(qp), "--judgments", str(jp),
                     "--index", str(index_dir)])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "MRR=0.5000" in out
        assert "q2\tNF" in out

    def test_json_report_and_out_file(self, index_dir, tmp_path, capsys):
        qp, jp = self._write_data(tmp_path)
        report_path = tmp_path / "report.json"
        code = main(["eval", "--queries", str(qp), "--judgments", str(jp),
                     "--index", str(index_dir), "--json", "--out", str(report_path)])
        assert code == EXIT_OK
        stdout_report = json.loads(capsys.readouterr().out)
        file_report = json.loads(report_path.read_text())
        assert stdout_report == file_report
        assert stdout_report["q"] == 2
        assert stdout_report["sr_at"]["1"] == 0.5

    def test_malformed_judgments_is_data_error(self, index_dir, tmp_path, capsys):
        qp, _ = self._write_data(tmp_path)
        bad = tmp_path / "bad.tsv"
        bad.write_text("q1\tonly-two-fields\n")
        code = main(["eval", "--queries", str(qp), "--judgments", str(bad),
                     "--index", str(index_dir)])
        assert code == EXIT_DATA


class TestStatsCommand:
    def test_text(self, index_dir, capsys):
        assert main(["stats", "--index", str(index_dir)]) == EXIT_OK
        assert "records: 2" in capsys.readouterr().out

    def test_json(self, index_dir, capsys):
        assert main(["stats", "--index", str(index_dir), "--json"]) == EXIT_OK
        stats = json.loads(capsys.readouterr().out)
        assert stats["records"] == 2
        assert stats["has_postings"] is True


class TestUsageMapping:
    def test_no_subcommand(self, capsys):
        assert main([]) == EXIT_USAGE

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == EXIT_USAGE

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == EXIT_OK
        assert "index" in capsys.readouterr().out

    def test_serve_with_bad_index_fails_at_startup(self, tmp_path, capsys):
        assert main(["serve", "--index", str(tmp_path / "nope")]) == EXIT_DATA


@pytest.fixture(scope="module")
def http_server(index_dir):
    engine = SearchEngine(load_index(index_dir), load_default_lexicons())
    httpd = make_server(engine, 0)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()
    httpd.server_close()


def _get(url: str) -> tuple[int, bytes]:
    try:
        with urllib.request.urlopen(url) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


class TestHttpService:
    def test_healthz(self, http_server):
        status, body = _get(f"{http_server}/healthz")
        assert status == 200
        assert json.loads(body) == {"status": "ok", "methods": 2}

    def test_search_top_result(self, http_server):
        q = urllib.parse.quote(QUERY)
        status, body = _get(f"{http_server}/search?q={q}")
        assert status == 200
        payload = json.loads(body)
        assert payload["results"][0]["method_name"] == "convertInputStreamToString"

    def test_missing_q_is_400(self, http_server):
        status, body = _get(f"{http_server}/search")
        assert status == 400
        assert "q" in json.loads(body)["error"]

    def test_bad_k_is_400(self, http_server):
        q = urllib.parse.quote(QUERY)
        status, _ = _get(f"{http_server}/search?q={q}&k=zero")
        assert status == 400

    def test_bad_mode_is_400(self, http_server):
        q = urllib.parse.quote(QUERY)
        status, _ = _get(f"{http_server}/search?q={q}&mode=fancy")
        assert status == 400

    def test_unsearchable_query_is_400(self, http_server):
        status, body = _get(f"{http_server}/search?q=java")
        assert status == 400
        assert "no searchable words" in json.loads(body)["error"]

    def test_unknown_path_is_404(self, http_server):
        status, _ = _get(f"{http_server}/nope")
        assert status == 404

    def test_concurrent_requests(self, http_server):
        q = urllib.parse.quote(QUERY)
        results = []

        def hit():
            results.append(_get(f"{http_server}/search?q={q}")[0])

        threads = [threading.Thread(target=hit) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert results == [200] * 8

    def test_http_matches_cli_json_byte_for_byte(self, http_server, index_dir, capsys):
        q = urllib.parse.quote(QUERY)
        _, body = _get(f"{http_server}/search?q={q}&k=10&mode=full")
        code = main(["search", QUERY, "--index", str(index_dir),
                     "--k", "10", "--mode", "full", "--json"])
        assert code == EXIT_OK
        cli_bytes = capsys.readouterr().out.encode("utf-8")
        assert cli_bytes == body

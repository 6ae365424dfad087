"""Index build/load, ordered matching, and trigram prefilter tests."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from seqmatch.errors import IndexBuildError, IndexFormatError
from seqmatch.extractor import MethodRecord, extract_methods
from seqmatch.index import (
    MatchPattern,
    NameIndex,
    build_index,
    load_index,
    ordered_match,
    search_names,
)
from seqmatch.ingest import SourceFile
from seqmatch.lexicons import load_default_lexicons

GOLDEN = Path(__file__).parent / "fixtures" / "golden" / "streamlib"
JDK = load_default_lexicons().jdk


def _rec(name: str, key: str | None = None) -> MethodRecord:
    return MethodRecord(
        method_key=key or f"r#F.java#{abs(hash(name)) % 9999}",
        name=name,
        name_lower=name.lower(),
        param_types=(),
        return_type="void",
        body_text=f"void {name}() {{ }}",
        api_sequence=(),
        content_hash="0" * 32,
        has_javadoc=False,
    )


def golden_records() -> list[MethodRecord]:
    records = []
    for path in sorted(GOLDEN.glob("*.java")):
        src = SourceFile("streamlib", path.name, path.read_text(), 0)
        records.extend(extract_methods(src, JDK))
    return records


class TestOrderedMatch:
    def test_full_pattern_matches_first_method(self):
        p = MatchPattern(("convert", "inputstream", "to", "string"))
        assert ordered_match("convertinputstreamtostring", p)

    def test_full_pattern_rejects_second_method(self):
        # no "to" between "inputstream" and "string" in the 2-variant
        p = MatchPattern(("convert", "inputstream", "to", "string"))
        assert not ordered_match("convertinputstream2string", p)

    def test_single_word_is_containment(self):
        assert ordered_match("xcontainsy", MatchPattern(("contains",)))
        assert not ordered_match("xcontainsy", MatchPattern(("z",)))

    def test_overlap_not_allowed(self):
        # second "aba" must start after the first ends
        assert not ordered_match("ababa", MatchPattern(("aba", "aba")))
        assert ordered_match("abaaba", MatchPattern(("aba", "aba")))

    def test_empty_word_rejected(self):
        with pytest.raises(ValueError):
            MatchPattern(("a", ""))
        with pytest.raises(ValueError):
            MatchPattern(())

    def test_wildcard_rendering(self):
        p = MatchPattern(("convert", "string"))
        assert p.wildcard == ".*convert.*string.*"

    def test_drop_monotone_fuzz(self):
        rng = random.Random(7)
        for _ in range(300):
            name = "".join(rng.choice("abcdef") for _ in range(rng.randrange(3, 25)))
            words = tuple(
                "".join(rng.choice("abcdef") for _ in range(rng.randrange(1, 4)))
                for _ in range(rng.randrange(1, 5))
            )
            if not ordered_match(name, MatchPattern(words)) or len(words) < 2:
                continue
            for drop in range(len(words)):
                reduced = words[:drop] + words[drop + 1 :]
                assert ordered_match(name, MatchPattern(reduced))


class TestBuildAndLoad:
    def test_golden_fixture_roundtrip(self, tmp_path):
        idx = build_index(golden_records(), tmp_path / "idx")
        assert len(idx) == 2
        loaded = load_index(tmp_path / "idx")
        assert loaded.records == idx.records
        for word in ("convert", "input", "stream", "string"):
            assert loaded.frequency.get(word) == 2
        assert loaded.frequency.get("to") == 1

    def test_empty_index(self, tmp_path):
        idx = build_index([], tmp_path / "idx")
        assert len(idx) == 0
        assert search_names(idx, MatchPattern(("anything",))) == []

    def test_duplicate_key_rejected(self, tmp_path):
        records = [_rec("first", key="r#A.java#1"), _rec("second", key="r#A.java#1")]
        with pytest.raises(IndexBuildError, match="r#A.java#1"):
            build_index(records, tmp_path / "idx")

    def test_unknown_version_rejected(self, tmp_path):
        build_index([_rec("f")], tmp_path / "idx")
        meta = tmp_path / "idx" / "meta.json"
        meta.write_text(meta.read_text().replace('"format_version":1', '"format_version":99'))
        with pytest.raises(IndexFormatError, match="format_version"):
            load_index(tmp_path / "idx")

    def test_not_an_index_dir(self, tmp_path):
        with pytest.raises(IndexFormatError):
            load_index(tmp_path)

    def test_concurrent_build_locked_out(self, tmp_path):
        out = tmp_path / "idx"
        out.mkdir()
        (out / ".build.lock").touch()
        with pytest.raises(IndexBuildError, match="lock"):
            build_index([_rec("f")], out)

    def test_failed_build_cleans_up(self, tmp_path):
        def exploding():
            yield _rec("ok")
            raise OSError("disk gone")

        out = tmp_path / "idx"
        with pytest.raises(OSError):
            build_index(exploding(), out)
        assert list(out.iterdir()) == []

    def test_rebuild_is_byte_identical(self, tmp_path):
        build_index(golden_records(), tmp_path / "a")
        build_index(golden_records(), tmp_path / "b")
        for name in ("methods.jsonl", "names.idx", "postings.bin", "frequency.tsv", "meta.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestSearchNames:
    def test_fixture_three_word_pattern_hits_both(self, tmp_path):
        idx = build_index(golden_records(), tmp_path / "idx")
        hits = search_names(idx, MatchPattern(("convert", "inputstream", "string")))
        assert len(hits) == 2

    def test_fixture_single_word_hits_both(self, tmp_path):
        idx = build_index(golden_records(), tmp_path / "idx")
        assert len(search_names(idx, MatchPattern(("string",)))) == 2

    def test_no_hits(self, tmp_path):
        idx = build_index(golden_records(), tmp_path / "idx")
        assert search_names(idx, MatchPattern(("zzz",))) == []

    def test_short_words_fall_through_prefilter(self, tmp_path):
        idx = build_index([_rec("getXY"), _rec("setAB")], tmp_path / "idx")
        assert idx.postings is not None
        hits = search_names(idx, MatchPattern(("xy",)))
        assert [idx.names[o] for o in hits] == ["getxy"]

    def test_prefilter_equals_full_scan(self, tmp_path):
        rng = random.Random(20250822)
        syllables = ["get", "set", "read", "str", "conv", "to", "ing", "put", "x"]
        records = [
            _rec("".join(rng.choice(syllables) for _ in range(rng.randrange(1, 6))), key=f"r#F#{i}")
            for i in range(400)
        ]
        idx = build_index(records, tmp_path / "with")
        bare = NameIndex(records=idx.records, frequency=idx.frequency, postings=None)
        for _ in range(120):
            words = tuple(
                rng.choice(syllables + ["zz"]) for _ in range(rng.randrange(1, 4))
            )
            pattern = MatchPattern(words)
            assert search_names(idx, pattern) == search_names(bare, pattern)

    def test_stats_shape(self, tmp_path):
        idx = build_index(golden_records(), tmp_path / "idx")
        stats = idx.stats()
        assert stats["records"] == 2
        assert stats["name_word_vocabulary"] > 0
        assert sum(stats["jdk_ratio_quartiles"].values()) == 2

"""Extractor tests: golden API sequences, hashing, structure recovery."""

from __future__ import annotations

import random
from pathlib import Path

import pytest

from seqmatch.extractor import (
    ApiToken,
    Imports,
    MethodRecord,
    RawRef,
    content_hash,
    extract_methods,
    parse_imports,
    qualify_apis,
)
from seqmatch.ingest import SourceFile
from seqmatch.javatok import tokenize
from seqmatch.lexicons import load_default_lexicons

GOLDEN = Path(__file__).parent / "fixtures" / "golden" / "streamlib"

JDK = load_default_lexicons().jdk


def _src(text: str, rel: str = "T.java", repo: str = "r") -> SourceFile:
    return SourceFile(repo_id=repo, rel_path=rel, text=text, byte_len=len(text.encode()))


def _extract(text: str) -> list[MethodRecord]:
    return extract_methods(_src(text), JDK)


def _golden(name: str) -> list[MethodRecord]:
    text = (GOLDEN / name).read_text()
    return extract_methods(_src(text, rel=name, repo="streamlib"), JDK)


class TestGoldenSequences:
    def test_convert_input_stream_to_string_apis(self):
        """The 8-token sequence of the first worked-example method."""
        (rec,) = _golden("StreamUtils.java")
        assert rec.name == "convertInputStreamToString"
        assert rec.name_lower == "convertinputstreamtostring"
        assert [a.qualified for a in rec.api_sequence] == [
            "java.io.InputStream",
            "java.io.InputStreamReader",
            "java.io.BufferedReader",
            "java.lang.StringBuilder",
            "java.io.BufferedReader.readLine()",
            "java.lang.StringBuilder.append()",
            "java.lang.StringBuilder.toString()",
            "java.lang.String",
        ]
        assert all(a.is_jdk for a in rec.api_sequence)
        assert rec.jdk_ratio == 1.0

    def test_convert_input_stream_to_string_simples(self):
        (rec,) = _golden("StreamUtils.java")
        assert [a.simple for a in rec.api_sequence] == [
            "InputStream",
            "InputStreamReader",
            "BufferedReader",
            "StringBuilder",
            "BufferedReader.readLine",
            "StringBuilder.append",
            "StringBuilder.toString",
            "String",
        ]

    def test_convert_input_stream_2_string_apis(self):
        """Unresolvable Util passes through unqualified, flagged non-JDK."""
        (rec,) = _golden("LegacyStreamUtils.java")
        assert rec.name == "convertInputStream2String"
        assert [a.qualified for a in rec.api_sequence] == [
            "java.io.InputStream",
            "Util.convert()",
            "java.lang.String",
        ]
        assert [a.is_jdk for a in rec.api_sequence] == [True, False, True]
        assert [a.simple for a in rec.api_sequence] == ["InputStream", "Util.convert", "String"]
        assert rec.jdk_ratio == pytest.approx(2 / 3)

    def test_golden_record_fields(self):
        (rec,) = _golden("StreamUtils.java")
        assert rec.method_key == "streamlib#StreamUtils.java#9"
        assert rec.repo_id == "streamlib"
        assert rec.rel_path == "StreamUtils.java"
        assert rec.start_line == 9
        assert rec.param_types == ("InputStream",)
        assert rec.return_type == "String"
        assert not rec.has_javadoc
        assert rec.body_text.splitlines()[0].strip().endswith("{")
        assert rec.name in rec.body_text.splitlines()[0]


class TestContentHash:
    def test_indentation_invariant(self):
        a = "public void f() {\n    int x = 1;\n}"
        b = "public void f() {\n\t\tint x = 1;\n}"
        assert content_hash(a) == content_hash(b)

    def test_modifier_sensitive(self):
        a = "public void f() { }"
        b = "private void f() { }"
        assert content_hash(a) != content_hash(b)

    def test_empty_string(self):
        assert content_hash("") == "d41d8cd98f00b204e9800998ecf8427e"

    def test_comments_retained(self):
        a = "void f() { /* fast path */ }"
        b = "void f() { /* slow path */ }"
        assert content_hash(a) != content_hash(b)


class TestQualifyApis:
    def test_java_lang_implicit(self):
        (tok,) = qualify_apis([RawRef("type", ("String",))], Imports({}, ()), JDK)
        assert tok == ApiToken("java.lang.String", "String", True)

    def test_passthrough_unresolved(self):
        (tok,) = qualify_apis([RawRef("call", ("Util", "convert"))], Imports({}, ()), JDK)
        assert tok.qualified == "Util.convert()"
        assert tok.simple == "Util.convert"
        assert not tok.is_jdk

    def test_direct_import_hit(self):
        imports = Imports({"File": "java.io.File"}, ())
        (tok,) = qualify_apis([RawRef("type", ("File",))], imports, JDK)
        assert tok.qualified == "java.io.File"
        assert tok.is_jdk

    def test_wildcard_import_via_catalog(self):
        imports = Imports({}, ("java.io",))
        (tok,) = qualify_apis([RawRef("type", ("InputStream",))], imports, JDK)
        assert tok.qualified == "java.io.InputStream"

    def test_non_lang_catalog_type_not_implicitly_imported(self):
        # Files lives in java.nio.file; without an import it stays bare.
        (tok,) = qualify_apis([RawRef("type", ("Files",))], Imports({}, ()), JDK)
        assert tok.qualified == "Files"
        assert not tok.is_jdk

    def test_duplicates_kept_in_order(self):
        refs = [RawRef("type", ("String",)), RawRef("type", ("String",))]
        toks = qualify_apis(refs, Imports({}, ()), JDK)
        assert [t.qualified for t in toks] == ["java.lang.String", "java.lang.String"]


class TestParseImports:
    def test_direct_wildcard_and_static(self):
        code = tokenize(
            "package p;\n"
            "import java.io.File;\n"
            "import java.util.*;\n"
            "import static java.lang.Math.max;\n"
            "class A {}"
        )
        imports = parse_imports(code)
        assert imports.direct["File"] == "java.io.File"
        assert imports.direct["max"] == "java.lang.Math.max"
        assert imports.wildcard == ("java.util",)


class TestStructureRecovery:
    def test_interface_without_bodies_yields_nothing(self):
        assert _extract("interface Runner { void run(); int count(); }") == []

    def test_default_method_body_is_extracted(self):
        recs = _extract("interface R { default int f() { return 1; } void g(); }")
        assert [r.name for r in recs] == ["f"]

    def test_abstract_method_excluded(self):
        recs = _extract(
            "abstract class A { abstract void f(); int g() { return 2; } }"
        )
        assert [r.name for r in recs] == ["g"]

    def test_constructor_included_with_empty_return_type(self):
        recs = _extract("class A { A(int x) { this.x = x; } }")
        assert len(recs) == 1
        assert recs[0].name == "A"
        assert recs[0].return_type == ""

    def test_anonymous_class_method_extracted(self):
        recs = _extract(
            "class A {\n"
            "  void outer() {\n"
            "    Runnable r = new Runnable() {\n"
            "      public void run() { work(); }\n"
            "    };\n"
            "    r.run();\n"
            "  }\n"
            "}\n"
        )
        assert sorted(r.name for r in recs) == ["outer", "run"]

    def test_anonymous_body_excluded_from_outer_apis(self):
        recs = _extract(
            "class A {\n"
            "  void outer() {\n"
            "    Runnable r = new Runnable() {\n"
            "      public void run() { new StringBuilder(); }\n"
            "    };\n"
            "  }\n"
            "}\n"
        )
        outer = next(r for r in recs if r.name == "outer")
        # the anon instantiation itself counts; its interior does not
        assert [a.simple for a in outer.api_sequence] == ["Runnable"]
        run = next(r for r in recs if r.name == "run")
        assert [a.simple for a in run.api_sequence] == ["StringBuilder"]

    def test_local_class_method_extracted(self):
        recs = _extract(
            "class A { void f() { class B { void g() { h(); } } new B().g(); } }"
        )
        assert sorted(r.name for r in recs) == ["f", "g"]

    def test_enum_constants_not_methods(self):
        recs = _extract(
            "enum Color {\n"
            "  RED(1), GREEN(2);\n"
            "  private final int code;\n"
            "  Color(int code) { this.code = code; }\n"
            "  int code() { return code; }\n"
            "}\n"
        )
        assert sorted(r.name for r in recs) == ["Color", "code"]

    def test_enum_constant_body_methods_extracted(self):
        recs = _extract(
            "enum Op {\n"
            "  PLUS { int apply(int a, int b) { return a + b; } };\n"
            "  abstract int apply(int a, int b);\n"
            "}\n"
        )
        assert [r.name for r in recs] == ["apply"]

    def test_control_flow_not_mistaken_for_scopes(self):
        recs = _extract(
            "class A {\n"
            "  int f(int n) {\n"
            "    if (new java.util.Random().nextBoolean()) { n++; }\n"
            "    for (int i = 0; i < n; i++) { n += i; }\n"
            "    while (n > 0) { n--; }\n"
            "    return n;\n"
            "  }\n"
            "}\n"
        )
        assert [r.name for r in recs] == ["f"]

    def test_stray_close_brace_yields_nothing(self):
        assert _extract("} class A { void f() {} }") == []

    def test_truncated_file_keeps_closed_methods(self):
        recs = _extract("class A { void f() { g(); } void g() { while (true) {")
        assert [r.name for r in recs] == ["f"]

    def test_string_literal_contents_ignored(self):
        recs = _extract('class A { String f() { return "new StringBuilder()"; } }')
        (rec,) = recs
        assert [a.simple for a in rec.api_sequence] == ["String"]

    def test_static_initializer_is_not_a_method(self):
        recs = _extract("class A { static { init(); } void f() {} }")
        assert [r.name for r in recs] == ["f"]

    def test_lambda_body_stays_inside_method(self):
        recs = _extract(
            "class A { void f(java.util.List<String> xs) {"
            " xs.forEach(x -> { use(x); }); } }"
        )
        assert [r.name for r in recs] == ["f"]

    def test_generic_method_return_type(self):
        recs = _extract("class A { public <T> T identity(T x) { return x; } }")
        (rec,) = recs
        assert rec.name == "identity"
        assert rec.return_type == "T"

    def test_annotated_method_detected(self):
        recs = _extract('class A { @Override @Tag("x") public String f() { return s; } }')
        assert [r.name for r in recs] == ["f"]


class TestJavadoc:
    def test_javadoc_block_detected(self):
        recs = _extract("class A { /** Does a thing. */ void f() {} }")
        assert recs[0].has_javadoc

    def test_plain_comment_is_not_javadoc(self):
        recs = _extract("class A { /* not doc */ void f() {}\n // nope\n void g() {} }")
        assert [r.has_javadoc for r in recs] == [False, False]


class TestApiDetails:
    def test_receiver_resolution_through_locals(self):
        recs = _extract(
            "import java.util.ArrayList;\n"
            "class A { int f() { ArrayList xs = new ArrayList(); xs.add(1);"
            " return xs.size(); } }"
        )
        (rec,) = recs
        quals = [a.qualified for a in rec.api_sequence]
        assert "java.util.ArrayList.add()" in quals
        assert "java.util.ArrayList.size()" in quals

    def test_static_call_via_import(self):
        recs = _extract(
            "import java.nio.file.Files;\n"
            "class A { void f() { Files.readAllBytes(p); } }"
        )
        (rec,) = recs
        assert rec.api_sequence[0].qualified == "java.nio.file.Files.readAllBytes()"

    def test_declared_type_not_emitted_only_seeded(self):
        # `String line;` seeds the receiver table but emits no token
        recs = _extract("class A { void f() { String line; line.trim(); } }")
        (rec,) = recs
        assert [a.qualified for a in rec.api_sequence] == ["java.lang.String.trim()"]

    def test_generic_param_types_emit_arguments(self):
        recs = _extract(
            "import java.util.Map;\n"
            "class A { void f(Map<String, Integer> m) {} }"
        )
        (rec,) = recs
        assert [a.simple for a in rec.api_sequence] == ["Map", "String", "Integer"]
        assert rec.param_types == ("Map<String, Integer>",)

    def test_method_reference_emits_member(self):
        recs = _extract("class A { void f() { g(Integer::parseInt); } }")
        (rec,) = recs
        quals = [a.qualified for a in rec.api_sequence]
        assert "java.lang.Integer.parseInt()" in quals

    def test_cast_does_not_emit(self):
        recs = _extract("class A { Object f(Object o) { return (String) o; } }")
        (rec,) = recs
        simples = [a.simple for a in rec.api_sequence]
        assert simples == ["Object", "Object"]  # param + return only


class TestRecordSerialization:
    def test_dict_roundtrip(self):
        (rec,) = _golden("LegacyStreamUtils.java")
        assert MethodRecord.from_dict(rec.to_dict()) == rec

    def test_extraction_is_deterministic(self):
        text = (GOLDEN / "StreamUtils.java").read_text()
        first = extract_methods(_src(text), JDK)
        second = extract_methods(_src(text), JDK)
        assert first == second


def test_fuzz_never_raises():
    rng = random.Random(20250822)
    alphabet = "abcXY_ {}();.\"'<>=,/*@123\n"
    for _ in range(300):
        text = "".join(rng.choice(alphabet) for _ in range(rng.randrange(0, 400)))
        records = extract_methods(_src(text), JDK)
        assert isinstance(records, list)
        for rec in records:
            assert rec.name in rec.body_text
            assert 0.0 <= rec.jdk_ratio <= 1.0

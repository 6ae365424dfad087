"""Java method extraction.

Turns source text into MethodRecords: name, parameter/return types, the raw
method source, and a best-effort fully-qualified API sequence. The parser is
a tokenizer plus a brace-structure recognizer, not a grammar: it recovers
class/method nesting from `{`/`}` shape and recognizes member signatures as
"identifier followed by ( at class-member depth". That trades completeness
for resilience — a file that defeats the recognizer yields fewer (or zero)
records and a logged diagnostic, never an exception.

API sequence assembly order: parameter types first, then body usages in
textual order, then the return type last. Body usages cover constructor
calls (`new T(...)` emits the type token), method calls with the receiver
resolved through a local-variable type table (`r.readLine()` emits
`BufferedReader.readLine()` when `r` was declared as BufferedReader), bare
and static calls, and capitalized type mentions. Plain local variable
declarations only seed the receiver table; the declared type itself is not
emitted. Qualification uses the file's imports plus the JDK catalog for
implicit java.lang types; anything unresolved passes through unqualified.
"""

from __future__ import annotations

import hashlib
import logging
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .ingest import SourceFile
from .javatok import Token, tokenize
from .lexicons import JdkCatalog

log = logging.getLogger(__name__)

_MODIFIERS = frozenset(
    {
        "public",
        "private",
        "protected",
        "static",
        "final",
        "abstract",
        "default",
        "synchronized",
        "native",
        "strictfp",
        "transient",
        "volatile",
        "sealed",
    }
)

_PRIMITIVES = frozenset(
    {"boolean", "byte", "char", "short", "int", "long", "float", "double", "void"}
)

_CONTROL = frozenset(
    {
        "if",
        "else",
        "for",
        "while",
        "do",
        "switch",
        "case",
        "try",
        "catch",
        "finally",
        "return",
        "throw",
        "break",
        "continue",
        "assert",
        "yield",
    }
)

# Reserved words plus literals; treating the contextual 'record'/'yield' as
# keywords here only affects pathological identifier choices.
_KEYWORDS = (
    _MODIFIERS
    | _PRIMITIVES
    | _CONTROL
    | frozenset(
        {
            "class",
            "interface",
            "enum",
            "extends",
            "implements",
            "import",
            "package",
            "new",
            "this",
            "super",
            "instanceof",
            "throws",
            "goto",
            "const",
            "null",
            "true",
            "false",
            "permits",
        }
    )
)

_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*\Z")


@dataclass(frozen=True, slots=True)
class ApiToken:
    """One qualified API reference, e.g. java.lang.StringBuilder.append()."""

    qualified: str
    simple: str
    is_jdk: bool

    def to_dict(self) -> dict:
        return {"qualified": self.qualified, "simple": self.simple, "is_jdk": self.is_jdk}

    @classmethod
    def from_dict(cls, d: Mapping) -> "ApiToken":
        return cls(qualified=d["qualified"], simple=d["simple"], is_jdk=bool(d["is_jdk"]))


@dataclass(frozen=True, slots=True)
class MethodRecord:
    method_key: str  # repo_id + "#" + rel_path + "#" + start_line
    name: str
    name_lower: str
    param_types: tuple[str, ...]
    return_type: str  # "" for constructors
    body_text: str
    api_sequence: tuple[ApiToken, ...]
    content_hash: str
    has_javadoc: bool

    @property
    def repo_id(self) -> str:
        return self.method_key.split("#", 1)[0]

    @property
    def rel_path(self) -> str:
        return self.method_key.split("#", 1)[1].rsplit("#", 1)[0]

    @property
    def start_line(self) -> int:
        return int(self.method_key.rsplit("#", 1)[1])

    @property
    def jdk_ratio(self) -> float:
        if not self.api_sequence:
            return 0.0
        return sum(1 for a in self.api_sequence if a.is_jdk) / len(self.api_sequence)

    def to_dict(self) -> dict:
        return {
            "method_key": self.method_key,
            "name": self.name,
            "name_lower": self.name_lower,
            "param_types": list(self.param_types),
            "return_type": self.return_type,
            "body_text": self.body_text,
            "api_sequence": [a.to_dict() for a in self.api_sequence],
            "content_hash": self.content_hash,
            "has_javadoc": self.has_javadoc,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "MethodRecord":
        return cls(
            method_key=d["method_key"],
            name=d["name"],
            name_lower=d["name_lower"],
            param_types=tuple(d["param_types"]),
            return_type=d["return_type"],
            body_text=d["body_text"],
            api_sequence=tuple(ApiToken.from_dict(a) for a in d["api_sequence"]),
            content_hash=d["content_hash"],
            has_javadoc=bool(d["has_javadoc"]),
        )


@dataclass(frozen=True, slots=True)
class Imports:
    """Parsed import declarations of one file."""

    direct: Mapping[str, str]  # simple name -> fully qualified
    wildcard: tuple[str, ...]  # package names from `import pkg.*;`


@dataclass(frozen=True, slots=True)
class RawRef:
    """Unqualified API reference found in a method.

    kind "type": a type usage (parameter, constructor, return, mention);
    kind "call": a method call, chain[0] being the receiver type or the
    bare member name.
    """

    kind: str
    chain: tuple[str, ...]


def content_hash(body_source: str) -> str:
    """MD5 over the source with whitespace runs collapsed to single spaces."""
    normalized = re.sub(r"\s+", " ", body_source).strip()
    return hashlib.md5(normalized.encode("utf-8")).hexdigest()


def qualify_apis(
    body_tokens: Sequence[RawRef], imports: Imports, jdk_catalog: JdkCatalog
) -> list[ApiToken]:
    """Qualify raw references: explicit import, implicit java.lang, passthrough.

    Order of appearance is preserved and duplicates are kept; dedup is a
    search-time concern, not an extraction one.
    """
    out: list[ApiToken] = []
    for ref in body_tokens:
        first = ref.chain[0]
        qualified_first = imports.direct.get(first)
        if qualified_first is None:
            for pkg in imports.wildcard:
                hit = jdk_catalog.qualify_in_package(first, pkg)
                if hit is not None:
                    qualified_first = hit
                    break
        if qualified_first is None:
            hit = jdk_catalog.qualify(first)
            if hit is not None and hit.rpartition(".")[0] == "java.lang":
                qualified_first = hit
        if qualified_first is None:
            qualified_first = first
        full = ".".join((qualified_first, *ref.chain[1:]))
        if ref.kind == "call":
            qualified = full + "()"
            simple = ".".join(ref.chain)
        else:
            qualified = full
            simple = ref.chain[-1]
        out.append(
            ApiToken(
                qualified=qualified,
                simple=simple,
                is_jdk=qualified.startswith(("java.", "javax.")),
            )
        )
    return out


def parse_imports(code: Sequence[Token]) -> Imports:
    direct: dict[str, str] = {}
    wildcard: list[str] = []
    depth = 0
    i = 0
    while i < len(code):
        t = code[i]
        if t.text == "{":
            depth += 1
        elif t.text == "}":
            depth = max(0, depth - 1)
        elif depth == 0 and t.kind == "ident" and t.text == "import":
            j = i + 1
            if j < len(code) and code[j].text == "static":
                j += 1
            parts: list[str] = []
            star = False
            while j < len(code) and code[j].text != ";":
                if code[j].text == "*":
                    star = True
                elif code[j].kind == "ident":
                    parts.append(code[j].text)
                j += 1
            if star and parts:
                wildcard.append(".".join(parts))
            elif len(parts) >= 2:
                direct.setdefault(parts[-1], ".".join(parts))
            i = j
            continue
        i += 1
    return Imports(direct=direct, wildcard=tuple(wildcard))


# --- structure walk -------------------------------------------------------


@dataclass(slots=True)
class _Pending:
    sig_start: int
    name_idx: int
    lparen: int
    rparen: int
    ret_tokens: list[int]
    has_javadoc: bool
    open_idx: int = -1
    close_idx: int = -1
    excluded: list[tuple[int, int]] = field(default_factory=list)


@dataclass(slots=True)
class _Frame:
    kind: str  # top | type | method | block | expr
    open_idx: int = -1
    parens: int = 0
    segment: list[int] = field(default_factory=list)
    enum_pending: bool = False
    preserve_parent: bool = False
    pending: _Pending | None = None


def _is_type_decl(code: Sequence[Token], seg: Sequence[int]) -> bool:
    """True for class/interface/enum/record declarations.

    Requires the keyword to introduce a name (next token a plain identifier)
    and not to be the `.class` literal (previous token a dot).
    """
    for pos, k in enumerate(seg):
        txt = code[k].text
        if txt in ("class", "interface", "enum") or (
            txt == "record" and code[k].kind == "ident"
        ):
            if pos > 0 and code[seg[pos - 1]].text == ".":
                continue
            if pos + 1 >= len(seg):
                continue
            nxt = code[seg[pos + 1]]
            if nxt.kind != "ident" or nxt.text in _KEYWORDS:
                continue
            if txt == "record":
                if pos + 2 < len(seg) and code[seg[pos + 2]].text in ("(", "<"):
                    return True
                continue
            return True
    return False


def _is_anon_new(code: Sequence[Token], seg: Sequence[int]) -> bool:
    """True when the segment ends with `new Type(...)`: an anonymous class."""
    if not seg or code[seg[-1]].text != ")":
        return False
    depth = 0
    m = None
    for p in range(len(seg) - 1, -1, -1):
        txt = code[seg[p]].text
        if txt == ")":
            depth += 1
        elif txt == "(":
            depth -= 1
            if depth == 0:
                m = p
                break
    if m is None or m == 0:
        return False
    q = m - 1
    if code[seg[q]].text == ">":
        d = 0
        while q >= 0:
            txt = code[seg[q]].text
            if txt == ">":
                d += 1
            elif txt == "<":
                d -= 1
                if d == 0:
                    q -= 1
                    break
            q -= 1
        if q < 0:
            return False
    if q < 0 or code[seg[q]].kind != "ident" or code[seg[q]].text in _KEYWORDS:
        return False
    q -= 1
    while (
        q - 1 >= 0
        and code[seg[q]].text == "."
        and code[seg[q - 1]].kind == "ident"
        and code[seg[q - 1]].text not in _KEYWORDS
    ):
        q -= 2
    return q >= 0 and code[seg[q]].text == "new"


def _strip_annotations(code: Sequence[Token], seg: Sequence[int]) -> list[int]:
    out: list[int] = []
    i = 0
    n = len(seg)
    while i < n:
        if code[seg[i]].text != "@":
            out.append(seg[i])
            i += 1
            continue
        i += 1
        while i < n and code[seg[i]].kind == "ident":
            i += 1
            if i < n and code[seg[i]].text == ".":
                i += 1
            else:
                break
        if i < n and code[seg[i]].text == "(":
            bal = 0
            while i < n:
                if code[seg[i]].text == "(":
                    bal += 1
                elif code[seg[i]].text == ")":
                    bal -= 1
                    if bal == 0:
                        i += 1
                        break
                i += 1
    return out


_RET_PUNCT = frozenset({".", "<", ">", ",", "[", "]", "?", "&"})


def _parse_signature(
    code: Sequence[Token], seg: Sequence[int], has_javadoc: bool
) -> _Pending | None:
    if not seg:
        return None
    toks = _strip_annotations(code, seg)
    lp = next((j for j, k in enumerate(toks) if code[k].text == "("), None)
    if lp is None or lp == 0:
        return None
    name_k = toks[lp - 1]
    name_t = code[name_k]
    if name_t.kind != "ident" or name_t.text in _KEYWORDS:
        return None
    bal = 0
    rp = None
    for j in range(lp, len(toks)):
        txt = code[toks[j]].text
        if txt == "(":
            bal += 1
        elif txt == ")":
            bal -= 1
            if bal == 0:
                rp = j
                break
    if rp is None:
        return None
    tail = toks[rp + 1 :]
    if tail:
        if code[tail[0]].text != "throws":
            return None
        for k in tail[1:]:
            t = code[k]
            if t.kind != "ident" and t.text not in (".", ","):
                return None
    head = toks[: lp - 1]
    r = 0
    while r < len(head) and code[head[r]].text in _MODIFIERS:
        r += 1
    if r < len(head) and code[head[r]].text == "<":
        depth = 0
        while r < len(head):
            txt = code[head[r]].text
            if txt == "<":
                depth += 1
            elif txt == ">":
                depth -= 1
                if depth == 0:
                    r += 1
                    break
            r += 1
    ret = head[r:]
    for k in ret:
        t = code[k]
        if t.kind == "ident":
            if t.text in _KEYWORDS and t.text not in _PRIMITIVES:
                return None
        elif t.kind == "punct":
            if t.text not in _RET_PUNCT:
                return None
        else:
            return None
    return _Pending(
        sig_start=seg[0],
        name_idx=name_k,
        lparen=toks[lp],
        rparen=toks[rp],
        ret_tokens=list(ret),
        has_javadoc=has_javadoc,
    )


def _classify(code: Sequence[Token], frame: _Frame, javadoc_marks: frozenset[int]) -> _Frame:
    seg = frame.segment
    texts = [code[k].text for k in seg]
    tset = set(texts)

    if texts and texts[-1] == "->":
        return _Frame(kind="block")
    if _is_type_decl(code, seg):
        return _Frame(kind="type", enum_pending="enum" in tset)
    if _is_anon_new(code, seg):
        return _Frame(kind="type")
    if frame.kind == "type" and frame.enum_pending:
        return _Frame(kind="type")
    if frame.parens > 0:
        return _Frame(kind="expr", preserve_parent=True)
    if frame.kind in ("top", "type"):
        if "=" in tset:
            return _Frame(kind="expr")
        javadoc = bool(seg) and seg[0] in javadoc_marks
        pending = _parse_signature(code, seg, javadoc)
        if pending is not None:
            return _Frame(kind="method", pending=pending)
        return _Frame(kind="block")
    if tset & _CONTROL:
        return _Frame(kind="block")
    if "=" in tset:
        return _Frame(kind="expr")
    if texts and texts[-1] in (",", "]", "("):
        return _Frame(kind="expr")
    if not texts and frame.kind == "expr":
        return _Frame(kind="expr")
    return _Frame(kind="block")


def _walk(code: Sequence[Token], javadoc_marks: frozenset[int]) -> list[_Pending] | None:
    """Recover method spans; None signals irrecoverable structure."""
    stack = [_Frame(kind="top")]
    done: list[_Pending] = []
    for idx, t in enumerate(code):
        top = stack[-1]
        txt = t.text
        if txt == "{":
            frame = _classify(code, top, javadoc_marks)
            frame.open_idx = idx
            if frame.pending is not None:
                frame.pending.open_idx = idx
            if not frame.preserve_parent:
                top.segment.clear()
            stack.append(frame)
        elif txt == "}":
            if len(stack) == 1:
                return None
            frame = stack.pop()
            if frame.kind == "method" and frame.pending is not None:
                frame.pending.close_idx = idx
                frame.pending.excluded.sort()
                done.append(frame.pending)
            if frame.kind == "type":
                for holder in reversed(stack):
                    if holder.kind == "method" and holder.pending is not None:
                        holder.pending.excluded.append((frame.open_idx, idx))
                        break
            if not frame.preserve_parent:
                stack[-1].segment.clear()
        elif txt == ";" and top.parens == 0:
            top.segment.clear()
            if top.kind == "type":
                top.enum_pending = False
        else:
            if txt == "(":
                top.parens += 1
            elif txt == ")":
                top.parens = max(0, top.parens - 1)
            top.segment.append(idx)
    return done


# --- reference scanning ---------------------------------------------------


def _read_chain(code: Sequence[Token], i: int, end: int) -> tuple[tuple[str, ...], int]:
    chain = [code[i].text]
    j = i + 1
    while (
        j + 1 < end
        and code[j].text == "."
        and code[j + 1].kind == "ident"
        and code[j + 1].text not in _KEYWORDS
    ):
        chain.append(code[j + 1].text)
        j += 2
    return tuple(chain), j


_GENERIC_OK_PUNCT = frozenset({",", ".", "?", "[", "]", "<", ">", "&"})
_GENERIC_OK_KEYWORDS = frozenset({"extends", "super"}) | _PRIMITIVES


def _skip_generics(code: Sequence[Token], i: int, end: int) -> int | None:
    """Index after a balanced type-argument list starting at '<', else None."""
    depth = 0
    j = i
    while j < end:
        t = code[j]
        if t.text == "<":
            depth += 1
        elif t.text == ">":
            depth -= 1
            if depth == 0:
                return j + 1
        elif t.kind == "ident":
            if t.text in _KEYWORDS and t.text not in _GENERIC_OK_KEYWORDS:
                return None
        elif t.kind != "punct" or t.text not in _GENERIC_OK_PUNCT:
            return None
        j += 1
    return None


def _skip_annotation(code: Sequence[Token], i: int, end: int) -> int:
    j = i + 1
    while j < end and code[j].kind == "ident":
        j += 1
        if j < end and code[j].text == ".":
            j += 1
        else:
            break
    if j < end and code[j].text == "(":
        bal = 0
        while j < end:
            if code[j].text == "(":
                bal += 1
            elif code[j].text == ")":
                bal -= 1
                if bal == 0:
                    return j + 1
            j += 1
    return j


def _type_chains(code: Sequence[Token], indices: Iterable[int]) -> list[tuple[str, ...]]:
    """Identifier chains in a type span, e.g. Map<String,Integer> -> 3 chains."""
    out: list[tuple[str, ...]] = []
    idx = list(indices)
    i = 0
    while i < len(idx):
        t = code[idx[i]]
        if t.kind != "ident" or t.text in _KEYWORDS:
            i += 1
            continue
        chain = [t.text]
        i += 1
        while (
            i + 1 < len(idx)
            and code[idx[i]].text == "."
            and code[idx[i + 1]].kind == "ident"
            and code[idx[i + 1]].text not in _KEYWORDS
        ):
            chain.append(code[idx[i + 1]].text)
            i += 2
        if chain[-1][:1].isupper():
            out.append(tuple(chain))
    return out


def _scan_body(
    code: Sequence[Token],
    start: int,
    end: int,
    excluded: Sequence[tuple[int, int]],
    seed_locals: Mapping[str, str],
) -> list[RawRef]:
    refs: list[RawRef] = []
    local_types = dict(seed_locals)
    excl = list(excluded)
    e = 0
    i = start
    while i < end:
        while e < len(excl) and excl[e][1] < i:
            e += 1
        if e < len(excl) and excl[e][0] <= i <= excl[e][1]:
            i = excl[e][1] + 1
            e += 1
            continue
        t = code[i]
        if t.kind != "ident":
            if t.text == "@":
                i = _skip_annotation(code, i, end)
                continue
            if t.text == "::" and i + 1 < end and code[i + 1].kind == "ident":
                member = code[i + 1].text
                if member not in _KEYWORDS:
                    refs.append(RawRef("call", (member,)))
                    i += 2
                    continue
            i += 1
            continue
        if t.text == "new":
            if i + 1 < end and code[i + 1].kind == "ident" and code[i + 1].text not in _KEYWORDS:
                chain, j = _read_chain(code, i + 1, end)
                if j < end and code[j].text == "<":
                    skipped = _skip_generics(code, j, end)
                    if skipped is not None:
                        j = skipped
                refs.append(RawRef("type", chain))
                i = j
            else:
                i += 1
            continue
        if t.text in _KEYWORDS:
            i += 1
            continue
        chain, j = _read_chain(code, i, end)
        nxt = code[j].text if j < end else ""
        if nxt == "(":
            if len(chain) > 1 and chain[0] in local_types:
                refs.append(RawRef("call", (local_types[chain[0]], *chain[1:])))
            else:
                refs.append(RawRef("call", chain))
            i = j
            continue
        if nxt == "::":
            k = j + 1
            if k < end and code[k].text == "new":
                refs.append(RawRef("type", chain))
                i = k + 1
                continue
            if k < end and code[k].kind == "ident" and code[k].text not in _KEYWORDS:
                base = local_types.get(chain[0])
                use = (base, *chain[1:], code[k].text) if base else (*chain, code[k].text)
                refs.append(RawRef("call", use))
                i = k + 1
                continue
            i = j + 1
            continue
        after = j
        if nxt == "<" and chain[0][:1].isupper():
            skipped = _skip_generics(code, j, end)
            if skipped is not None:
                after = skipped
        while after + 1 < end and code[after].text == "[" and code[after + 1].text == "]":
            after += 2
        if (
            chain[0][:1].isupper()
            and after < end
            and code[after].kind == "ident"
            and code[after].text not in _KEYWORDS
        ):
            mark = code[after + 1].text if after + 1 < end else ";"
            if mark in ("=", ";", ",", ":", ")"):
                local_types[code[after].text] = ".".join(chain)
                i = after + 1
                continue
        if any(seg[:1].isupper() for seg in chain):
            cut = next(p for p, seg in enumerate(chain) if seg[:1].isupper())
            is_cast = (
                i > start
                and code[i - 1].text == "("
                and after < end
                and code[after].text == ")"
            )
            if not is_cast:
                refs.append(RawRef("type", chain[: cut + 1]))
        i = max(after, j, i + 1)
    return refs


# --- record assembly ------------------------------------------------------


def _split_params(code: Sequence[Token], lparen: int, rparen: int) -> list[list[int]]:
    groups: list[list[int]] = []
    current: list[int] = []
    depth = 0
    for k in range(lparen + 1, rparen):
        txt = code[k].text
        if txt in ("(", "<"):
            depth += 1
        elif txt in (")", ">"):
            depth -= 1
        if txt == "," and depth == 0:
            groups.append(current)
            current = []
            continue
        current.append(k)
    if current:
        groups.append(current)
    return [g for g in groups if g]


def _slice_text(text: str, code: Sequence[Token], first: int, last: int) -> str:
    return text[code[first].pos : code[last].pos + len(code[last].text)]


def extract_methods(source: SourceFile, jdk_catalog: JdkCatalog) -> list[MethodRecord]:
    """All method/constructor records of one file, in textual order.

    Beyond-recovery brace imbalance (a close with no matching open) yields
    an empty list and a logged diagnostic. A truncated file keeps whatever
    methods closed cleanly before the cut.
    """
    tokens = tokenize(source.text)
    code: list[Token] = []
    marks: set[int] = set()
    pending_javadoc = False
    for t in tokens:
        if t.kind == "comment":
            pending_javadoc = t.text.startswith("/**") and len(t.text) > 4
            continue
        if pending_javadoc:
            marks.add(len(code))
            pending_javadoc = False
        code.append(t)
    imports = parse_imports(code)
    spans = _walk(code, frozenset(marks))
    if spans is None:
        log.warning(
            "unbalanced braces in %s/%s; no methods extracted",
            source.repo_id,
            source.rel_path,
        )
        return []
    spans.sort(key=lambda p: p.sig_start)
    records: list[MethodRecord] = []
    for span in spans:
        record = _build_record(source, code, span, imports, jdk_catalog)
        if record is not None:
            records.append(record)
    return records


def _build_record(
    source: SourceFile,
    code: Sequence[Token],
    span: _Pending,
    imports: Imports,
    jdk_catalog: JdkCatalog,
) -> MethodRecord | None:
    name = code[span.name_idx].text
    if not _IDENT_RE.match(name):
        return None
    refs: list[RawRef] = []
    seed: dict[str, str] = {}
    param_types: list[str] = []
    for group in _split_params(code, span.lparen, span.rparen):
        group = _strip_annotations(code, group)
        group = [k for k in group if code[k].text != "final"]
        name_pos = None
        for pos in range(len(group) - 1, -1, -1):
            tk = code[group[pos]]
            if tk.kind == "ident" and tk.text not in _KEYWORDS:
                name_pos = pos
                break
        if name_pos is None or name_pos == 0:
            continue
        type_toks = group[:name_pos]
        param_types.append(_slice_text(source.text, code, type_toks[0], type_toks[-1]))
        chains = _type_chains(code, type_toks)
        for chain in chains:
            refs.append(RawRef("type", chain))
        var_name = code[group[name_pos]].text
        seed[var_name] = ".".join(chains[0]) if chains else code[type_toks[0]].text
    refs.extend(_scan_body(code, span.open_idx + 1, span.close_idx, span.excluded, seed))
    if span.ret_tokens:
        for chain in _type_chains(code, span.ret_tokens):
            refs.append(RawRef("type", chain))
    body_text = _slice_text(source.text, code, span.sig_start, span.close_idx)
    return_type = (
        _slice_text(source.text, code, span.ret_tokens[0], span.ret_tokens[-1])
        if span.ret_tokens
        else ""
    )
    start_line = code[span.sig_start].line
    return MethodRecord(
        method_key=f"{source.repo_id}#{source.rel_path}#{start_line}",
        name=name,
        name_lower=name.lower(),
        param_types=tuple(param_types),
        return_type=return_type,
        body_text=body_text,
        api_sequence=tuple(qualify_apis(refs, imports, jdk_catalog)),
        content_hash=content_hash(body_text),
        has_javadoc=span.has_javadoc,
    )

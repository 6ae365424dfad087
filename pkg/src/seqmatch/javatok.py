"""Lexer for Java source text.

Produces a flat token stream good enough for structural recovery: identifiers,
numbers, string/char literals (kept as single tokens so their contents never
look like code), comments, and punctuation. Multi-char operators are split
into single characters except "::" and "->", which matter structurally.
Never raises on malformed input; an unterminated literal or comment simply
runs to end of file.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # ident | number | string | char | punct | comment
    text: str
    line: int  # 1-based
    pos: int  # character offset into the source text


def _ident_start(ch: str) -> bool:
    return ch.isalpha() or ch in "_$"


def _ident_part(ch: str) -> bool:
    return ch.isalnum() or ch in "_$"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            i += 1
            continue
        if ch in " \t\r\f\v":
            i += 1
            continue
        start = i
        start_line = line
        if ch == "/" and i + 1 < n:
            nxt = text[i + 1]
            if nxt == "/":
                end = text.find("\n", i)
                if end < 0:
                    end = n
                tokens.append(Token("comment", text[start:end], start_line, start))
                i = end
                continue
            if nxt == "*":
                end = text.find("*/", i + 2)
                if end < 0:
                    end = n
                else:
                    end += 2
                body = text[start:end]
                line += body.count("\n")
                tokens.append(Token("comment", body, start_line, start))
                i = end
                continue
        if ch == '"':
            if text.startswith('"""', i):
                end = text.find('"""', i + 3)
                end = n if end < 0 else end + 3
            else:
                end = _scan_quoted(text, i, '"')
            body = text[start:end]
            line += body.count("\n")
            tokens.append(Token("string", body, start_line, start))
            i = end
            continue
        if ch == "'":
            end = _scan_quoted(text, i, "'")
            tokens.append(Token("char", text[start:end], start_line, start))
            i = end
            continue
        if _ident_start(ch):
            j = i + 1
            while j < n and _ident_part(text[j]):
                j += 1
            tokens.append(Token("ident", text[i:j], start_line, start))
            i = j
            continue
        if ch.isdigit():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] in "._"):
                j += 1
            tokens.append(Token("number", text[i:j], start_line, start))
            i = j
            continue
        if ch == ":" and i + 1 < n and text[i + 1] == ":":
            tokens.append(Token("punct", "::", start_line, start))
            i += 2
            continue
        if ch == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(Token("punct", "->", start_line, start))
            i += 2
            continue
        tokens.append(Token("punct", ch, start_line, start))
        i += 1
    return tokens


def _scan_quoted(text: str, i: int, quote: str) -> int:
    """End offset (exclusive) of a quoted literal starting at i."""
    j = i + 1
    n = len(text)
    while j < n:
        ch = text[j]
        if ch == "\\":
            j += 2
            continue
        if ch == quote or ch == "\n":
            return j + 1 if ch == quote else j
        j += 1
    return n

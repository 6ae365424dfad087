"""Word-level knowledge: identifier splitting, word properties, importance,
frequency, synonyms, and the JDK API catalog.

Everything here is immutable after load and safe for concurrent reads. The
three shipped data files (data/pos_lexicon.tsv, data/synonyms.tsv,
data/jdk_catalog.txt) are plain UTF-8 text; their formats are documented in
docs/formats.md and any file with the same shape can be swapped in.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .stemmer import stem

__all__ = [
    "WordProperty",
    "TokenMetadata",
    "PosLexicon",
    "FrequencyTable",
    "SynonymTable",
    "JdkCatalog",
    "Lexicons",
    "split_identifier",
    "classify_word",
    "importance_level",
    "synonym_substitute",
    "load_default_lexicons",
]


class WordProperty(enum.Enum):
    """Grammatical property of a query word."""

    VERB = "verb"
    NOUN = "noun"
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    PREPOSITION = "preposition"
    CONJUNCTION = "conjunction"
    OTHER = "other"


# Properties that survive the query-understanding filter.
SEARCHABLE_PROPERTIES = frozenset(
    {
        WordProperty.VERB,
        WordProperty.NOUN,
        WordProperty.ADJECTIVE,
        WordProperty.ADVERB,
        WordProperty.PREPOSITION,
        WordProperty.CONJUNCTION,
    }
)


@dataclass(frozen=True, slots=True)
class TokenMetadata:
    """Metadata attached to one searchable query word.

    token is the stemmed, lowercase, possibly synonym-substituted form used
    for matching; raw is the original query token it came from.
    """

    token: str
    raw: str
    property: WordProperty
    frequency: int
    importance: int


_IDENT_PARTS = re.compile(r"[0-9]+|[A-Z]+(?![a-z])|[A-Z][a-z]*|[a-z]+")


def split_identifier(name: str) -> list[str]:
    """Split an identifier into lowercase words.

    Splits on camelCase boundaries, underscores, and digit runs; a run of
    capitals stays together until a lowercase letter follows (acronym rule),
    so "parseHTTPResponse" gives [parse, http, response]. Digits come out as
    their own tokens.
    """
    return [part.lower() for part in _IDENT_PARTS.findall(name)]


class PosLexicon:
    """word -> WordProperty lookup table loaded from a TSV file."""

    def __init__(self, entries: dict[str, WordProperty]):
        self._entries = dict(entries)

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, word: str) -> WordProperty | None:
        return self._entries.get(word)

    @classmethod
    def load(cls, path: Path) -> "PosLexicon":
        return cls(_parse_pos_lines(path.read_text(encoding="utf-8").splitlines()))


def _parse_pos_lines(lines: Iterable[str]) -> dict[str, WordProperty]:
    entries: dict[str, WordProperty] = {}
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, _, prop = line.partition("\t")
        entries[word.strip().lower()] = WordProperty(prop.strip().lower())
    return entries


_PREPOSITIONS = frozenset(
    """in on at to from with by for of into onto over under between through
    during before after about against within without via per across behind
    below above near off out up down around along among beyond toward
    towards upon inside outside
    """.split()
)

_CONJUNCTIONS = frozenset(
    "and or but nor so yet if while although because unless until whereas than as whether".split()
)

_SUFFIX_RULES = (
    ("ly", WordProperty.ADVERB),
    ("ing", WordProperty.VERB),
    ("ize", WordProperty.VERB),
    ("ify", WordProperty.VERB),
    ("ous", WordProperty.ADJECTIVE),
    ("ful", WordProperty.ADJECTIVE),
    ("ive", WordProperty.ADJECTIVE),
    ("al", WordProperty.ADJECTIVE),
)


def classify_word(raw: str, pos_lexicon: PosLexicon) -> WordProperty:
    """Classify a lowercase word into exactly one WordProperty.

    Lexicon lookup wins; on a miss, fall back to cheap heuristics: tokens
    without letters are Other, closed preposition/conjunction lists beat the
    suffix rules (so "during" stays a preposition), then suffix rules, then
    Noun as the default.
    """
    hit = pos_lexicon.get(raw)
    if hit is not None:
        return hit
    if not any(ch.isalpha() for ch in raw):
        return WordProperty.OTHER
    if raw in _PREPOSITIONS:
        return WordProperty.PREPOSITION
    if raw in _CONJUNCTIONS:
        return WordProperty.CONJUNCTION
    for suffix, prop in _SUFFIX_RULES:
        if len(raw) >= len(suffix) + 2 and raw.endswith(suffix):
            return prop
    return WordProperty.NOUN


def importance_level(property: WordProperty, is_jdk_noun: bool) -> int:
    """Importance 1..5 of a word given its property and JDK-noun status.

    JDK noun 5; verb or non-JDK noun 4; adjective/adverb 3;
    preposition/conjunction 2; anything else 1.
    """
    if property is WordProperty.NOUN and is_jdk_noun:
        return 5
    if property in (WordProperty.VERB, WordProperty.NOUN):
        return 4
    if property in (WordProperty.ADJECTIVE, WordProperty.ADVERB):
        return 3
    if property in (WordProperty.PREPOSITION, WordProperty.CONJUNCTION):
        return 2
    return 1


class FrequencyTable:
    """stemmed word -> occurrence count across all split method names."""

    def __init__(self, counts: dict[str, int] | None = None):
        self._counts = dict(counts or {})

    def __len__(self) -> int:
        return len(self._counts)

    def get(self, word: str) -> int:
        return self._counts.get(word, 0)

    def items(self) -> list[tuple[str, int]]:
        return sorted(self._counts.items())

    @classmethod
    def count_names(cls, names: Iterable[str]) -> "FrequencyTable":
        counts: dict[str, int] = {}
        for name in names:
            for word in split_identifier(name):
                key = stem(word)
                counts[key] = counts.get(key, 0) + 1
        return cls(counts)

    @classmethod
    def load(cls, path: Path) -> "FrequencyTable":
        counts: dict[str, int] = {}
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, _, count = line.partition("\t")
            counts[word] = int(count)
        return cls(counts)

    def dump(self, path: Path) -> None:
        lines = [f"{word}\t{count}\n" for word, count in self.items()]
        path.write_text("".join(lines), encoding="utf-8")


class SynonymTable:
    """stemmed word -> candidate replacement stems, in file order."""

    def __init__(self, entries: dict[str, list[str]]):
        self._entries = {k: list(v) for k, v in entries.items()}

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, word: str) -> list[str]:
        return self._entries.get(word, [])

    @classmethod
    def load(cls, path: Path) -> "SynonymTable":
        entries: dict[str, list[str]] = {}
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            word, _, rest = line.partition("\t")
            key = stem(word.strip().lower())
            bucket = entries.setdefault(key, [])
            for alt in rest.split(","):
                alt = stem(alt.strip().lower())
                if alt and alt != key and alt not in bucket:
                    bucket.append(alt)
        return cls({k: v for k, v in entries.items() if v})


def synonym_substitute(
    word: str, freq_table: FrequencyTable, synonym_table: SynonymTable
) -> str:
    """Replace a zero-frequency stemmed word with its best-known synonym.

    The replacement is the synonym with the highest corpus frequency, ties
    broken by lexicographic order; a word with nonzero frequency, or one
    whose synonyms all have zero frequency, comes back unchanged.
    """
    if freq_table.get(word) > 0:
        return word
    best = word
    best_freq = 0
    for candidate in synonym_table.get(word):
        freq = freq_table.get(candidate)
        if freq > best_freq or (freq == best_freq > 0 and candidate < best):
            best = candidate
            best_freq = freq
    return best


class JdkCatalog:
    """Simple-name lookup over a list of qualified JDK type and member names.

    Catalog lines look like "java.io.InputStream" (a type) or
    "java.lang.String#substring" (a member). A word is a JDK word when it
    equals a catalog simple name case-insensitively, or is a complete
    concatenation of catalog simple names (e.g. "bytearray").
    """

    _MIN_PIECE = 3

    def __init__(self, types: list[str], members: list[tuple[str, str]]):
        # First entry wins for ambiguous simple names; the shipped file lists
        # preferred packages (java.lang, java.util, java.io) first.
        self._simple_to_qualified: dict[str, str] = {}
        self._by_package: dict[tuple[str, str], str] = {}
        for qualified in types:
            package, _, simple = qualified.rpartition(".")
            key = simple.lower()
            self._simple_to_qualified.setdefault(key, qualified)
            self._by_package[(package, key)] = qualified
        self._members: dict[str, str] = {}
        for owner, member in members:
            self._members.setdefault(member.lower(), owner)
        self._pieces = frozenset(
            w
            for w in (set(self._simple_to_qualified) | set(self._members))
            if len(w) >= self._MIN_PIECE
        )
        if not self._simple_to_qualified:
            raise ValueError("empty JDK catalog")

    def __len__(self) -> int:
        return len(self._simple_to_qualified) + len(self._members)

    def qualify(self, simple: str) -> str | None:
        """Qualified name for a simple type name, or None."""
        return self._simple_to_qualified.get(simple.lower())

    def qualify_in_package(self, simple: str, package: str) -> str | None:
        """Qualified name for simple within one package (wildcard imports)."""
        return self._by_package.get((package, simple.lower()))

    def is_jdk_word(self, word: str) -> bool:
        word = word.lower()
        if word in self._simple_to_qualified or word in self._members:
            return True
        return self._segmentable(word)

    def _segmentable(self, word: str) -> bool:
        if len(word) < 2 * self._MIN_PIECE:
            return False
        n = len(word)
        reachable = [False] * (n + 1)
        reachable[0] = True
        for i in range(n):
            if not reachable[i]:
                continue
            for j in range(i + self._MIN_PIECE, n + 1):
                if word[i:j] in self._pieces:
                    reachable[j] = True
        return reachable[n]

    @classmethod
    def load(cls, path: Path) -> "JdkCatalog":
        return cls._parse(path.read_text(encoding="utf-8").splitlines())

    @classmethod
    def _parse(cls, lines: Iterable[str]) -> "JdkCatalog":
        types: list[str] = []
        members: list[tuple[str, str]] = []
        for line in lines:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "#" in line:
                owner, _, member = line.partition("#")
                members.append((owner, member))
            else:
                types.append(line)
        return cls(types, members)


@dataclass(frozen=True)
class Lexicons:
    """Bundle of the word-level resources the query pipeline needs."""

    pos: PosLexicon
    synonyms: SynonymTable
    jdk: JdkCatalog
    frequency: FrequencyTable = field(default_factory=FrequencyTable)

    def with_frequency(self, frequency: FrequencyTable) -> "Lexicons":
        return Lexicons(self.pos, self.synonyms, self.jdk, frequency)


def _default_data_path(name: str) -> Path:
    # The data directory ships inside the package, next to this module.
    return Path(__file__).parent / "data" / name


def load_default_lexicons(
    pos_path: Path | None = None,
    synonyms_path: Path | None = None,
    jdk_path: Path | None = None,
) -> Lexicons:
    """Load the shipped data files, any of them overridable by path."""
    pos = PosLexicon.load(pos_path or _default_data_path("pos_lexicon.tsv"))
    synonyms = SynonymTable.load(synonyms_path or _default_data_path("synonyms.tsv"))
    jdk = JdkCatalog.load(jdk_path or _default_data_path("jdk_catalog.txt"))
    return Lexicons(pos=pos, synonyms=synonyms, jdk=jdk)

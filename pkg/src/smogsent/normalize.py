"""Micropost text normalization.

Raw tweet text is turned into sentences of lowercase, fully spelled-out
word tokens: URLs and mentions are dropped, abbreviations are expanded
from a lookup table and numerals are written out as English cardinals.
"""
from __future__ import annotations

import enum
import functools
import re
import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

__all__ = [
    "AbbrevTable",
    "EmptySentenceError",
    "MalformedNumeralError",
    "NormalizedDoc",
    "Sentence",
    "TokenOrigin",
    "WordToken",
    "default_abbrevs",
    "load_abbrevs",
    "normalize",
    "segment_sentences",
    "spell_out_number",
    "strip_micropost_artifacts",
    "tokenize",
]


class MalformedNumeralError(ValueError):
    pass


class EmptySentenceError(ValueError):
    """Raised when a sentence has no token with a letter in it."""


class TokenOrigin(str, enum.Enum):
    PLAIN = "plain"
    ABBREV = "abbrev-expansion"
    NUMERAL = "numeral-expansion"
    HASHTAG = "hashtag"


_LETTER = re.compile(r"[^\W\d_]")
_WORD_SURFACE = re.compile(r"[^\W\d_]+(?:'[^\W\d_]*)*")


@dataclass(frozen=True)
class WordToken:
    surface: str
    origin: TokenOrigin = TokenOrigin.PLAIN

    def __post_init__(self):
        if not self.surface or not _WORD_SURFACE.fullmatch(self.surface):
            raise ValueError(f"invalid word token {self.surface!r}")

    def __str__(self):
        return self.surface


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[WordToken, ...]

    def __post_init__(self):
        if not self.tokens:
            raise EmptySentenceError("sentence has no tokens")

    def __len__(self):
        return len(self.tokens)

    def __iter__(self) -> Iterator[WordToken]:
        return iter(self.tokens)

    @property
    def words(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True)
class NormalizedDoc:
    """Sentence-segmented document.

    A document with no surviving sentences is *unsorable*: it is still a
    valid value (sentiment can be computed on it) but has no SMOG grade.
    """

    sentences: tuple[Sentence, ...] = ()

    @property
    def sigma(self) -> int:
        return len(self.sentences)

    @property
    def sorable(self) -> bool:
        return bool(self.sentences)

    def tokens(self) -> Iterator[WordToken]:
        for sentence in self.sentences:
            yield from sentence.tokens

    @property
    def words(self) -> list[str]:
        return [t.surface for t in self.tokens()]


# --------------------------------------------------------------------------
# abbreviation table


class AbbrevTable(Mapping[str, tuple[str, ...]]):
    """Case-insensitive map from abbreviation to its expansion words."""

    def __init__(self, entries: Mapping[str, Iterable[str]] | None = None):
        self._map: dict[str, tuple[str, ...]] = {}
        for key, words in (entries or {}).items():
            self._add(key, words)

    def _add(self, key: str, words: Iterable[str], where: str = ""):
        k = key.strip().lower()
        expansion = tuple(w.lower() for w in words)
        if not k:
            raise ValueError(f"{where}empty abbreviation")
        if k in self._map:
            raise ValueError(f"{where}duplicate abbreviation {key!r}")
        if not expansion or not all(_LETTER.search(w) for w in expansion):
            raise ValueError(f"{where}abbreviation {key!r} needs a word expansion")
        self._map[k] = expansion

    def __getitem__(self, key: str) -> tuple[str, ...]:
        return self._map[key.lower()]

    def __contains__(self, key: object) -> bool:
        return isinstance(key, str) and key.lower() in self._map

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        return f"AbbrevTable({len(self)} entries)"

    def __eq__(self, other):
        if isinstance(other, AbbrevTable):
            return self._map == other._map
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<abbrevs>") -> "AbbrevTable":
        table = cls()
        for lineno, line in enumerate(lines, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            where = f"{source}:{lineno}: "
            if len(parts) != 2:
                raise ValueError(f"{where}expected 'abbrev<TAB>expansion'")
            table._add(parts[0], parts[1].split(), where)
        return table


def load_abbrevs(path: str | Path) -> AbbrevTable:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return AbbrevTable.from_lines(fh, str(path))


@functools.lru_cache(maxsize=1)
def default_abbrevs() -> AbbrevTable:
    """The small table shipped with the package (titles, months, govt, dept)."""
    text = resources.files("smogsent").joinpath("data/abbrevs.tsv").read_text("utf-8")
    return AbbrevTable.from_lines(text.splitlines(), "abbrevs.tsv")


# --------------------------------------------------------------------------
# artifact stripping and segmentation

_URL = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION = re.compile(r"(?<![\w@])@\w+")
_HASHTAG = re.compile(r"(?<![\w#])#(\w+)")
_HSPACE = re.compile(r"[^\S\n]+")
_KEEP_SYMBOLS = set("%&$₱'\"")
_DROP_CATEGORIES = {"So", "Sk", "Sm", "Cs", "Co", "Cn"}
_VARIATION_SELECTORS = "\ufe0e\ufe0f"


def _is_text_char(ch: str) -> bool:
    if ch in _KEEP_SYMBOLS or ch == "\n":
        return True
    cat = unicodedata.category(ch)
    if cat in _DROP_CATEGORIES:
        return False
    if ch in _VARIATION_SELECTORS:
        return False
    if cat == "Cf":
        return False
    if cat == "Cc":
        return ch in "\t\r"
    return True


def hashtag_bodies(raw: str) -> set[str]:
    """Lowercased bodies of the hashtags in ``raw``."""
    return {m.group(1).lower() for m in _HASHTAG.finditer(_URL.sub(" ", raw))}


def strip_micropost_artifacts(raw: str) -> str:
    """Remove URLs, @mentions, emoji and symbols; unwrap hashtags.

    >>> strip_micropost_artifacts("@juan #Budget2014 ok")
    'Budget2014 ok'
    """
    text = raw.replace("’", "'").replace("‘", "'")
    text = _URL.sub(" ", text)
    text = _MENTION.sub(" ", text)
    text = _HASHTAG.sub(r"\1", text)
    text = "".join(
        ch if _is_text_char(ch) else ("" if unicodedata.category(ch) == "Cf" else " ")
        for ch in text
    )
    lines = (_HSPACE.sub(" ", line).strip() for line in text.replace("\r", "\n").split("\n"))
    return "\n".join(line for line in lines if line)


_BOUNDARY = re.compile(r"[.!?]+|\n")
_WORD_BEFORE = re.compile(r"([^\W\d_][\w']*)$")


def segment_sentences(raw: str, abbrevs: Mapping[str, object] | None = None) -> list[str]:
    """Split on runs of ``.``/``!``/``?`` and on newlines.

    A single ``.`` is not a boundary when it sits between two digits or
    closes a word that ``abbrevs`` lists with a trailing period.
    """
    pieces: list[str] = []
    start = 0
    for m in _BOUNDARY.finditer(raw):
        run = m.group()
        if run == ".":
            before, after = raw[: m.start()], raw[m.end() : m.end() + 1]
            if before[-1:].isdigit() and after.isdigit():
                continue
            word = _WORD_BEFORE.search(before)
            if abbrevs is not None and word and (word.group(1).lower() + ".") in abbrevs:
                continue
        pieces.append(raw[start : m.start()])
        start = m.end()
    pieces.append(raw[start:])
    return [p.strip() for p in pieces if _LETTER.search(p)]


# --------------------------------------------------------------------------
# numbers

_ONES = (
    "zero one two three four five six seven eight nine ten eleven twelve "
    "thirteen fourteen fifteen sixteen seventeen eighteen nineteen"
).split()
_TENS = "_ _ twenty thirty forty fifty sixty seventy eighty ninety".split()
_SCALES = ("", "thousand", "million", "billion", "trillion")
MAX_NUMERAL_DIGITS = 15


def _below_thousand(n: int) -> list[str]:
    words = []
    hundreds, rest = divmod(n, 100)
    if hundreds:
        words += [_ONES[hundreds], "hundred"]
    if rest >= 20:
        tens, ones = divmod(rest, 10)
        words.append(_TENS[tens])
        if ones:
            words.append(_ONES[ones])
    elif rest:
        words.append(_ONES[rest])
    return words


def spell_out_number(numeral: str) -> list[str]:
    """English cardinal words for a digit string, without "and".

    >>> spell_out_number("2014")
    ['two', 'thousand', 'fourteen']
    """
    if not (numeral.isascii() and numeral.isdigit()):
        raise MalformedNumeralError(f"not a digit string: {numeral!r}")
    if len(numeral) > MAX_NUMERAL_DIGITS:
        raise MalformedNumeralError(f"numeral longer than {MAX_NUMERAL_DIGITS} digits")
    n = int(numeral)
    if n == 0:
        return ["zero"]
    words: list[str] = []
    for scale in range(len(_SCALES) - 1, -1, -1):
        chunk, n = divmod(n, 1000**scale)
        if chunk:
            words += _below_thousand(chunk)
            if _SCALES[scale]:
                words.append(_SCALES[scale])
    return words


# --------------------------------------------------------------------------
# tokenization

_SYMBOL_WORDS = {"%": "percent", "&": "and"}
_PIECE = re.compile(
    r"(?P<word>[^\W\d_]+(?:'[^\W\d_]*)*)"
    r"|(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<sym>[%&])"
)
_THOUSANDS_SEP = re.compile(r"(?<=\d),(?=\d{3}(?!\d))")
_EDGE_PUNCT = "\"'()[]{}<>,;:!?*"


def _spell_numeral(text: str) -> list[str]:
    whole, _, frac = text.partition(".")
    try:
        words = spell_out_number(whole)
    except MalformedNumeralError:
        return []
    if frac:
        words.append("point")
        words += [_ONES[int(d)] for d in frac]
    return words


def _abbrev_lookup(chunk: str, abbrevs: Mapping[str, tuple[str, ...]]):
    core = chunk.strip(_EDGE_PUNCT).lower()
    for candidate in (core, core.rstrip(".")):
        if candidate and candidate in abbrevs:
            return abbrevs[candidate]
    return None


def tokenize(
    sentence: str,
    abbrevs: Mapping[str, tuple[str, ...]] | None = None,
    hashtags: set[str] | frozenset[str] = frozenset(),
) -> Sentence:
    """Turn one raw sentence into a :class:`Sentence`.

    Whitespace-separated chunks found in ``abbrevs`` are replaced by their
    expansion (expansions are never looked up again). Other chunks are
    split on punctuation, hyphens included; numerals are spelled out and
    ``%``/``&`` become words. Chunks equal to an entry of ``hashtags`` are
    tagged as hashtag tokens.

    Raises :class:`EmptySentenceError` if nothing with a letter remains.
    """
    abbrevs = abbrevs if abbrevs is not None else {}
    tokens: list[WordToken] = []
    for chunk in sentence.split():
        expansion = _abbrev_lookup(chunk, abbrevs) if abbrevs else None
        if expansion is not None:
            tokens += [WordToken(w.lower(), TokenOrigin.ABBREV) for w in expansion]
            continue
        chunk = _THOUSANDS_SEP.sub("", chunk)
        is_tag = chunk.strip(_EDGE_PUNCT + ".").lower() in hashtags
        for m in _PIECE.finditer(chunk):
            if m.group("word"):
                origin = TokenOrigin.HASHTAG if is_tag else TokenOrigin.PLAIN
                tokens.append(WordToken(m.group("word").lower(), origin))
            elif m.group("num"):
                tokens += [WordToken(w, TokenOrigin.NUMERAL) for w in _spell_numeral(m.group("num"))]
            else:
                tokens.append(WordToken(_SYMBOL_WORDS[m.group("sym")], TokenOrigin.PLAIN))
    if not tokens:
        raise EmptySentenceError(f"no word tokens in {sentence!r}")
    return Sentence(tuple(tokens))


def normalize(raw: str, abbrevs: Mapping[str, tuple[str, ...]] | None = None) -> NormalizedDoc:
    """Strip, segment and tokenize ``raw``.

    Sentences that tokenize to nothing are dropped. The result may have
    zero sentences, check :attr:`NormalizedDoc.sorable`. ``abbrevs=None``
    uses the bundled table; pass an empty mapping to disable expansion.
    """
    if abbrevs is None:
        abbrevs = default_abbrevs()
    tags = hashtag_bodies(raw)
    sentences = []
    for piece in segment_sentences(strip_micropost_artifacts(raw), abbrevs):
        try:
            sentences.append(tokenize(piece, abbrevs, tags))
        except EmptySentenceError:
            continue
    return NormalizedDoc(tuple(sentences))

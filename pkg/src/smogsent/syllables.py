"""Syllable counting and polysyllable (three or more syllables) detection."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping, Union

from .normalize import NormalizedDoc, Sentence, WordToken

__all__ = [
    "SyllableCounter",
    "SyllableMode",
    "count_polysyllables",
    "count_syllables",
    "english_syllables",
    "filipino_syllables",
    "is_polysyllabic",
    "load_exceptions",
]

POLYSYLLABLE_MIN = 3

_VOWELS = frozenset("aeiou")
# vowel pairs usually pronounced as two syllables (cre-ate, ra-dio)
_HIATUS = frozenset({"ia", "io", "iu", "eo", "ua", "uo", "ii", "yi"})
# ...but not after these letters (na-tion, vi-sion, so-cial, quo-ta)
_HIATUS_BLOCKERS = frozenset("tscgxq")
_SILENT_E_SUFFIXES = ("ly", "ment", "ful", "less", "ness")


class SyllableMode(str, enum.Enum):
    ENGLISH = "english-heuristic"
    FILIPINO = "filipino-vowel"


def _vowel_mask(w: str) -> list[bool]:
    # y is a vowel unless word-initial or following another vowel (play, toy)
    mask = []
    for i, c in enumerate(w):
        if c == "y":
            mask.append(i > 0 and not mask[i - 1])
        else:
            mask.append(c in _VOWELS)
    return mask


def english_syllables(word: str) -> int:
    """Heuristic English syllable count.

    Counts vowel groups, then corrects for a silent final ``e`` (kept in
    consonant + ``le``), silent ``-es``/``-ed`` endings, silent ``e``
    before ``-ly``/``-ment``/``-ful``/``-less``/``-ness``, common vowel
    hiatus pairs, ``-ism`` and the ``mc`` prefix.
    """
    w = "".join(c for c in word.lower() if c.isalpha())
    if not w:
        return 1
    n_letters = len(w)
    vowel = _vowel_mask(w)

    def consonant(i: int) -> bool:
        return 0 <= i < n_letters and not vowel[i]

    def consonant_le(i: int) -> bool:
        # w[i] == 'l' preceded by a consonant: the "-le" in table, bottle
        return w[i] == "l" and consonant(i) and consonant(i - 1)

    n = 0
    for i, v in enumerate(vowel):
        if not v:
            continue
        if i == 0 or not vowel[i - 1]:
            n += 1
        elif w[i - 1 : i + 1] in _HIATUS and not (i >= 2 and w[i - 2] in _HIATUS_BLOCKERS):
            n += 1

    if w.endswith("e") and consonant(n_letters - 2) and not consonant_le(n_letters - 2):
        n -= 1
    elif (
        n_letters > 3
        and w[-1] in "sd"
        and w[-2] == "e"
        and consonant(n_letters - 3)
        and not consonant_le(n_letters - 3)
    ):
        prev = w[-3]
        if w[-1] == "d" and prev not in "td":
            n -= 1
        elif w[-1] == "s" and prev not in "sxzgc" and w[-4:-2] not in ("ch", "sh"):
            n -= 1
    for suffix in _SILENT_E_SUFFIXES:
        e_at = n_letters - len(suffix) - 1
        if e_at > 1 and w.endswith("e" + suffix) and consonant(e_at - 1) and not consonant_le(e_at - 1):
            n -= 1
            break

    if w.endswith("ism"):
        n += 1
    if w.startswith("mc") and n_letters > 2:
        n += 1
    return max(n, 1)


def filipino_syllables(word: str) -> int:
    """One syllable per vowel letter (Filipino orthography is syllabic)."""
    return max(sum(c in _VOWELS for c in word.lower()), 1)


_COUNTERS = {SyllableMode.ENGLISH: english_syllables, SyllableMode.FILIPINO: filipino_syllables}


def _key(word: str) -> str:
    return word.lower().replace("'", "")


@dataclass(frozen=True)
class SyllableCounter:
    """Syllable counter with a per-word override dictionary.

    ``exceptions`` maps a word either to a fixed count or to a
    :class:`SyllableMode` to apply to that word only; ``mode`` is the
    default for every other word.
    """

    exceptions: Mapping[str, Union[int, SyllableMode]] = field(default_factory=dict)
    mode: SyllableMode = SyllableMode.ENGLISH

    def __post_init__(self):
        clean = {}
        for word, value in self.exceptions.items():
            if isinstance(value, SyllableMode):
                pass
            elif isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ValueError(f"syllable override for {word!r} must be >= 1, got {value!r}")
            clean[_key(word)] = value
        object.__setattr__(self, "exceptions", MappingProxyType(clean))
        object.__setattr__(self, "mode", SyllableMode(self.mode))

    def __reduce__(self):
        return (SyllableCounter, (dict(self.exceptions), self.mode))

    def count(self, word: WordToken | str) -> int:
        surface = word.surface if isinstance(word, WordToken) else word
        override = self.exceptions.get(_key(surface))
        if isinstance(override, SyllableMode):
            return _COUNTERS[override](surface)
        if override is not None:
            return override
        return _COUNTERS[self.mode](surface)


def count_syllables(counter: SyllableCounter, word: WordToken | str) -> int:
    return counter.count(word)


def is_polysyllabic(counter: SyllableCounter, word: WordToken | str) -> bool:
    return counter.count(word) >= POLYSYLLABLE_MIN


def count_polysyllables(
    counter: SyllableCounter, doc: NormalizedDoc | Sentence | Iterable[Sentence]
) -> int:
    """Number of polysyllabic token occurrences (repeats count)."""
    if isinstance(doc, NormalizedDoc):
        if not doc.sorable:
            raise ValueError("cannot count polysyllables of a document with no sentences")
        sentences: Iterable[Sentence] = doc.sentences
    elif isinstance(doc, Sentence):
        sentences = (doc,)
    else:
        sentences = doc
    return sum(is_polysyllabic(counter, tok) for s in sentences for tok in s.tokens)


def load_exceptions(path: str | Path) -> dict[str, Union[int, SyllableMode]]:
    """Read a ``word<TAB>count`` file.

    The count column may also be ``filipino`` (or ``english``) to select a
    counting mode for that word.
    """
    path = Path(path)
    out: dict[str, Union[int, SyllableMode]] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            where = f"{path}:{lineno}"
            if len(parts) != 2 or not parts[0].strip():
                raise ValueError(f"{where}: expected 'word<TAB>count'")
            word, raw = _key(parts[0].strip()), parts[1].strip().lower()
            if word in out:
                raise ValueError(f"{where}: duplicate word {parts[0]!r}")
            if raw in ("filipino", "english"):
                out[word] = SyllableMode.FILIPINO if raw == "filipino" else SyllableMode.ENGLISH
                continue
            try:
                count = int(raw)
            except ValueError:
                raise ValueError(f"{where}: bad syllable count {parts[1]!r}") from None
            if count < 1:
                raise ValueError(f"{where}: syllable count must be >= 1")
            out[word] = count
    return out

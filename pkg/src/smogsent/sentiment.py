"""Three-class Naive Bayes polarity trained from a word lexicon.

Every lexicon entry is one single-word training example for its class.
Classification is bag-of-words over in-vocabulary tokens only; tokens the
model has never seen are skipped.
"""
from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .normalize import NormalizedDoc, WordToken

__all__ = [
    "CLASSES",
    "Language",
    "Lexicon",
    "LexiconError",
    "Polarity",
    "SentimentModel",
    "classify",
    "load_lexicon",
    "parse_lexicon",
    "starter_lexicon",
    "train",
    "train_counts",
]

TIE_TOLERANCE = 1e-12


class LexiconError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Polarity(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


class Language(str, enum.Enum):
    ENGLISH = "english"
    FILIPINO = "filipino"


CLASSES: tuple[Polarity, ...] = (Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL)


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, Polarity]
    languages: Mapping[str, Language]

    def __post_init__(self):
        counts = Counter(self.entries.values())
        missing = [c.value for c in CLASSES if not counts[c]]
        if missing:
            raise LexiconError(f"no entries for class(es): {', '.join(missing)}")
        for word in self.entries:
            if word != word.lower() or not word:
                raise LexiconError(f"lexicon words must be lowercase and non-empty: {word!r}")

    def class_counts(self) -> dict[Polarity, int]:
        counts = Counter(self.entries.values())
        return {c: counts[c] for c in CLASSES}

    def __len__(self):
        return len(self.entries)


def parse_lexicon(lines: Iterable[str]) -> Lexicon:
    """Parse ``word<TAB>polarity<TAB>language`` lines."""
    entries: dict[str, Polarity] = {}
    languages: dict[str, Language] = {}
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 3 or not parts[0]:
            raise LexiconError("expected 'word<TAB>polarity<TAB>language'", lineno)
        word, polarity, language = parts[0].lower(), parts[1].lower(), parts[2].lower()
        if word in entries:
            raise LexiconError(f"duplicate word {word!r}", lineno)
        try:
            entries[word] = Polarity(polarity)
        except ValueError:
            raise LexiconError(f"unknown polarity {parts[1]!r}", lineno) from None
        try:
            languages[word] = Language(language)
        except ValueError:
            raise LexiconError(f"unknown language {parts[2]!r}", lineno) from None
    return Lexicon(entries, languages)


def load_lexicon(source: str | Path) -> Lexicon:
    path = Path(source)
    with path.open(encoding="utf-8") as fh:
        return parse_lexicon(fh)


def starter_lexicon() -> Lexicon:
    """Small illustrative English/Filipino lexicon bundled with the package."""
    text = resources.files("smogsent").joinpath("data/lexicon.tsv").read_text("utf-8")
    return parse_lexicon(text.splitlines())


@dataclass(frozen=True)
class SentimentModel:
    """Trained parameters.

    ``likelihoods[c][w]`` is the smoothed P(w | c) for every vocabulary word;
    ``unseen[c]`` is the probability mass of the single shared pseudo-word
    that stands for everything outside the vocabulary.
    """

    priors: Mapping[Polarity, float]
    likelihoods: Mapping[Polarity, Mapping[str, float]]
    unseen: Mapping[Polarity, float]
    alpha: float
    vocabulary: frozenset[str]

    def log_likelihood(self, word: str, cls: Polarity) -> float:
        return math.log(self.likelihoods[cls][word])


def train_counts(
    word_counts: Mapping[Polarity, Mapping[str, int]],
    doc_counts: Mapping[Polarity, int],
    alpha: float = 1.0,
) -> SentimentModel:
    """Multinomial estimates from per-class token and example counts."""
    if not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be a positive finite number, got {alpha!r}")
    total_docs = sum(doc_counts.get(c, 0) for c in CLASSES)
    if total_docs <= 0:
        raise ValueError("no training examples")
    vocabulary = frozenset(w for c in CLASSES for w, n in word_counts.get(c, {}).items() if n > 0)
    v_plus_unseen = len(vocabulary) + 1
    priors, likelihoods, unseen = {}, {}, {}
    for c in CLASSES:
        counts = word_counts.get(c, {})
        denom = sum(counts.values()) + alpha * v_plus_unseen
        priors[c] = doc_counts.get(c, 0) / total_docs
        likelihoods[c] = {w: (counts.get(w, 0) + alpha) / denom for w in sorted(vocabulary)}
        unseen[c] = alpha / denom
    return SentimentModel(priors, likelihoods, unseen, float(alpha), vocabulary)


def train(lex: Lexicon, alpha: float = 1.0) -> SentimentModel:
    word_counts: dict[Polarity, Counter] = {c: Counter() for c in CLASSES}
    for word, polarity in lex.entries.items():
        word_counts[polarity][word] += 1
    return train_counts(word_counts, lex.class_counts(), alpha)


def _words(doc: NormalizedDoc | Iterable[WordToken | str]) -> list[str]:
    if isinstance(doc, NormalizedDoc):
        return doc.words
    if isinstance(doc, str):
        raise TypeError("classify expects tokens or a NormalizedDoc, not a raw string")
    return [t.surface if isinstance(t, WordToken) else t for t in doc]


def classify(
    model: SentimentModel, doc: NormalizedDoc | Sequence[WordToken | str]
) -> tuple[Polarity, dict[Polarity, float]]:
    """Label and normalized posterior for every class.

    Ties for the top posterior (within 1e-12) and documents without a
    single vocabulary word are labelled neutral.
    """
    in_vocab = [w for w in _words(doc) if w in model.vocabulary]
    if not in_vocab:
        return Polarity.NEUTRAL, {c: 1.0 / len(CLASSES) for c in CLASSES}
    log_post = {}
    for c in CLASSES:
        prior = model.priors[c]
        if prior == 0.0:
            log_post[c] = -math.inf
            continue
        log_post[c] = math.log(prior) + sum(model.log_likelihood(w, c) for w in in_vocab)
    top = max(log_post.values())
    unnorm = {c: math.exp(lp - top) for c, lp in log_post.items()}
    z = sum(unnorm.values())
    posterior = {c: unnorm[c] / z for c in CLASSES}
    best = max(posterior.values())
    leaders = [c for c in CLASSES if posterior[c] >= best - TIE_TOLERANCE]
    label = leaders[0] if len(leaders) == 1 else Polarity.NEUTRAL
    return label, posterior

"""SMOG readability formulas and per-document grading."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .normalize import NormalizedDoc
from .syllables import SyllableCounter, count_polysyllables

__all__ = [
    "Formula",
    "SmogGrade",
    "SmogInputs",
    "TooShortError",
    "UnsorableDocumentError",
    "grade_document",
    "sample_30_sentences",
    "smog_precise",
    "smog_short",
    "smog_simplified",
]

SAMPLE_SENTENCES = 30
WINDOW = 10

PRECISE_SLOPE = 1.043
PRECISE_INTERCEPT = 3.1291
CONVENTIONAL_INTERCEPT = 3.0
# the simplified formula's constant as it appears in the article (30 + sqrt(phi))
PRINTED_INTERCEPT = 30.0


class TooShortError(ValueError):
    pass


class UnsorableDocumentError(ValueError):
    """The document has no sentences left after normalization."""


class Formula(str, enum.Enum):
    PRECISE = "precise"
    SIMPLIFIED_PAPER = "simplified-paper"
    SIMPLIFIED_CONVENTIONAL = "simplified-conventional"
    SHORT_TEXT = "short-text"


@dataclass(frozen=True)
class SmogInputs:
    phi: int
    sigma: int

    def __post_init__(self):
        if self.phi < 0:
            raise ValueError(f"polysyllable count must be >= 0, got {self.phi}")
        if self.sigma < 1:
            raise ValueError(f"sentence count must be >= 1, got {self.sigma}")


@dataclass(frozen=True)
class SmogGrade:
    grade: float
    formula: Formula

    def __float__(self):
        return self.grade


def smog_precise(phi: int, sigma: int) -> SmogGrade:
    """``1.043 * sqrt(30 * phi / sigma) + 3.1291``."""
    SmogInputs(phi, sigma)
    grade = PRECISE_SLOPE * math.sqrt(SAMPLE_SENTENCES * phi / sigma) + PRECISE_INTERCEPT
    return SmogGrade(grade, Formula.PRECISE)


def smog_simplified(phi: int, variant: str = "conventional") -> SmogGrade:
    """Simplified SMOG for a 30-sentence sample.

    ``variant="conventional"`` gives ``3 + sqrt(phi)``; ``variant="paper"``
    gives ``30 + sqrt(phi)``, the constant as printed in the source article.
    """
    if phi < 0:
        raise ValueError(f"polysyllable count must be >= 0, got {phi}")
    if variant == "conventional":
        return SmogGrade(CONVENTIONAL_INTERCEPT + math.sqrt(phi), Formula.SIMPLIFIED_CONVENTIONAL)
    if variant == "paper":
        return SmogGrade(PRINTED_INTERCEPT + math.sqrt(phi), Formula.SIMPLIFIED_PAPER)
    raise ValueError(f"unknown simplified variant {variant!r}")


def smog_short(phi: int, sigma: int) -> SmogGrade:
    """Short-text SMOG, ``3 + sqrt(phi / sigma * (30 - sigma) + phi)``.

    The polysyllable density of the ``sigma`` available sentences is
    extrapolated to a 30-sentence sample. Needs ``1 <= sigma <= 30``.
    """
    SmogInputs(phi, sigma)
    if sigma > SAMPLE_SENTENCES:
        raise ValueError(f"short-text formula needs <= {SAMPLE_SENTENCES} sentences, got {sigma}")
    grade = CONVENTIONAL_INTERCEPT + math.sqrt(phi / sigma * (SAMPLE_SENTENCES - sigma) + phi)
    return SmogGrade(grade, Formula.SHORT_TEXT)


def sample_windows(sigma: int) -> list[int]:
    """Sentence indices of the beginning/middle/end sample (duplicates kept)."""
    if sigma < SAMPLE_SENTENCES:
        raise TooShortError(f"need at least {SAMPLE_SENTENCES} sentences, got {sigma}")
    middle = (sigma - WINDOW) // 2
    return [
        *range(0, WINDOW),
        *range(middle, middle + WINDOW),
        *range(sigma - WINDOW, sigma),
    ]


def sample_30_sentences(doc: NormalizedDoc) -> NormalizedDoc:
    """Ten consecutive sentences each from the start, middle and end."""
    idx = sample_windows(doc.sigma)
    return NormalizedDoc(tuple(doc.sentences[i] for i in idx))


_LONG_FORMULAS = ("precise", "simplified-conventional", "simplified-paper")


def grade_document(
    doc: NormalizedDoc, counter: SyllableCounter, long_formula: str = "precise"
) -> SmogGrade:
    """Grade one document.

    Fewer than 30 sentences: short-text formula over the whole document.
    Otherwise the 30-sentence sample is graded with ``long_formula``.
    """
    if not doc.sorable:
        raise UnsorableDocumentError("document has no sentences")
    if long_formula not in _LONG_FORMULAS:
        raise ValueError(f"long_formula must be one of {_LONG_FORMULAS}, got {long_formula!r}")
    if doc.sigma < SAMPLE_SENTENCES:
        return smog_short(count_polysyllables(counter, doc), doc.sigma)
    sample = sample_30_sentences(doc)
    phi = count_polysyllables(counter, sample)
    if long_formula == "precise":
        return smog_precise(phi, sample.sigma)
    return smog_simplified(phi, long_formula.split("-", 1)[1])

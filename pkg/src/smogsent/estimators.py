"""scikit-learn compatible wrappers.

These let the normalizer, SMOG grader and polarity classifier sit inside
a :class:`sklearn.pipeline.Pipeline` and be cloned or grid-searched::

    pipe = make_pipeline(TextNormalizer(), NaiveBayesPolarity(alpha=0.5))
    pipe.fit(texts, labels).predict(new_texts)
"""
from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Mapping

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .normalize import AbbrevTable, NormalizedDoc, default_abbrevs, load_abbrevs, normalize
from .sentiment import CLASSES, Lexicon, classify, train, train_counts
from .smog import grade_document
from .syllables import SyllableCounter, SyllableMode, load_exceptions
from .validation import check_alpha, check_polarity_labels, check_texts, check_token_documents

__all__ = ["NaiveBayesPolarity", "SmogScorer", "TextNormalizer"]


def _resolve_abbrevs(abbrevs) -> AbbrevTable:
    if abbrevs is None:
        return default_abbrevs()
    if isinstance(abbrevs, AbbrevTable):
        return abbrevs
    if isinstance(abbrevs, (str, Path)):
        return load_abbrevs(abbrevs)
    if isinstance(abbrevs, Mapping):
        return AbbrevTable(abbrevs)
    raise TypeError(f"abbrevs must be a table, mapping or path, got {type(abbrevs).__name__}")


class TextNormalizer(BaseEstimator, TransformerMixin):
    """Raw micropost strings to :class:`NormalizedDoc` objects.

    Parameters
    ----------
    abbrevs : AbbrevTable, mapping, path or None
        Abbreviation table; ``None`` uses the bundled default.
    """

    def __init__(self, abbrevs=None):
        self.abbrevs = abbrevs

    def fit(self, X=None, y=None):
        self.abbrevs_ = _resolve_abbrevs(self.abbrevs)
        return self

    def transform(self, X) -> list[NormalizedDoc]:
        check_is_fitted(self, "abbrevs_")
        return [x if isinstance(x, NormalizedDoc) else normalize(x, self.abbrevs_) for x in check_texts(X)]


class SmogScorer(BaseEstimator, TransformerMixin):
    """SMOG grade per document as a float array; unsorable documents give NaN.

    Parameters
    ----------
    exceptions : mapping, path or None
        Syllable overrides (``word -> count`` or ``word -> SyllableMode``).
    filipino : bool
        Count syllables one-per-vowel for every word.
    long_formula : {"precise", "simplified-conventional", "simplified-paper"}
        Formula for documents of 30 or more sentences.
    abbrevs :
        As for :class:`TextNormalizer`, used when raw strings are passed.
    """

    def __init__(self, exceptions=None, filipino=False, long_formula="precise", abbrevs=None):
        self.exceptions = exceptions
        self.filipino = filipino
        self.long_formula = long_formula
        self.abbrevs = abbrevs

    def fit(self, X=None, y=None):
        exc = self.exceptions
        if isinstance(exc, (str, Path)):
            exc = load_exceptions(exc)
        mode = SyllableMode.FILIPINO if self.filipino else SyllableMode.ENGLISH
        self.counter_ = SyllableCounter(dict(exc or {}), mode)
        self.abbrevs_ = _resolve_abbrevs(self.abbrevs)
        if self.long_formula not in ("precise", "simplified-conventional", "simplified-paper"):
            raise ValueError(f"unknown long_formula {self.long_formula!r}")
        return self

    def grades(self, X):
        """:class:`SmogGrade` per document, ``None`` where unsorable."""
        check_is_fitted(self, "counter_")
        out = []
        for x in check_texts(X):
            doc = x if isinstance(x, NormalizedDoc) else normalize(x, self.abbrevs_)
            out.append(grade_document(doc, self.counter_, self.long_formula) if doc.sorable else None)
        return out

    def transform(self, X) -> np.ndarray:
        return np.array([np.nan if g is None else g.grade for g in self.grades(X)], dtype=float)


class NaiveBayesPolarity(BaseEstimator, ClassifierMixin):
    """Multinomial Naive Bayes over positive / negative / neutral.

    ``X`` items may be :class:`NormalizedDoc` objects, token sequences or
    single words (as when fitting on a word lexicon). ``classes_`` is fixed
    to ``["positive", "negative", "neutral"]``.
    """

    def __init__(self, alpha=1.0):
        self.alpha = alpha

    def fit(self, X, y):
        alpha = check_alpha(self.alpha)
        docs = check_token_documents(X)
        labels = check_polarity_labels(y, len(docs))
        word_counts = {c: Counter() for c in CLASSES}
        for words, label in zip(docs, labels):
            word_counts[label].update(words)
        self.model_ = train_counts(word_counts, Counter(labels), alpha)
        self.classes_ = np.array([c.value for c in CLASSES])
        return self

    def fit_lexicon(self, lexicon: Lexicon):
        self.model_ = train(lexicon, check_alpha(self.alpha))
        self.classes_ = np.array([c.value for c in CLASSES])
        return self

    def _classify_all(self, X):
        check_is_fitted(self, "model_")
        return [classify(self.model_, words) for words in check_token_documents(X)]

    def predict_proba(self, X) -> np.ndarray:
        return np.array([[post[c] for c in CLASSES] for _, post in self._classify_all(X)]).reshape(-1, 3)

    def predict(self, X) -> np.ndarray:
        return np.array([label.value for label, _ in self._classify_all(X)], dtype=object)

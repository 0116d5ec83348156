"""Input checks shared by the estimators."""
from __future__ import annotations

import math
from numbers import Real
from typing import Iterable

from .normalize import NormalizedDoc, Sentence, WordToken
from .sentiment import Polarity


def _reject_bare_string(X, what: str):
    if isinstance(X, (str, bytes)):
        raise TypeError(f"expected a collection of {what}, got a single string")


def check_texts(X) -> list[str | NormalizedDoc]:
    """Raw strings or already-normalized documents."""
    _reject_bare_string(X, "texts")
    items = list(X)
    for i, x in enumerate(items):
        if not isinstance(x, (str, NormalizedDoc)):
            raise TypeError(f"item {i}: expected str or NormalizedDoc, got {type(x).__name__}")
    return items


def as_words(x, i: int = 0) -> list[str]:
    if isinstance(x, NormalizedDoc):
        return x.words
    if isinstance(x, Sentence):
        return x.words
    if isinstance(x, WordToken):
        return [x.surface]
    if isinstance(x, str):
        return [x.lower()]
    if isinstance(x, Iterable):
        words = []
        for t in x:
            if isinstance(t, WordToken):
                words.append(t.surface)
            elif isinstance(t, str):
                words.append(t.lower())
            else:
                raise TypeError(f"item {i}: tokens must be str or WordToken, got {type(t).__name__}")
        return words
    raise TypeError(f"item {i}: cannot read tokens from {type(x).__name__}")


def check_token_documents(X) -> list[list[str]]:
    """Each item is a NormalizedDoc, a token sequence, or one word."""
    _reject_bare_string(X, "token documents")
    return [as_words(x, i) for i, x in enumerate(X)]


def check_polarity_labels(y, n: int) -> list[Polarity]:
    _reject_bare_string(y, "labels")
    labels = []
    for i, v in enumerate(y):
        try:
            labels.append(Polarity(str(getattr(v, "value", v)).lower()))
        except ValueError:
            raise ValueError(f"label {i}: {v!r} is not one of positive/negative/neutral") from None
    if len(labels) != n:
        raise ValueError(f"got {n} documents but {len(labels)} labels")
    return labels


def check_alpha(alpha) -> float:
    if isinstance(alpha, bool) or not isinstance(alpha, Real) or not (alpha > 0 and math.isfinite(alpha)):
        raise ValueError(f"alpha must be a positive finite number, got {alpha!r}")
    return float(alpha)

import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, strategies as st

from smogsent.normalize import NormalizedDoc, Sentence, WordToken
from smogsent.smog import (
    Formula,
    TooShortError,
    UnsorableDocumentError,
    grade_document,
    sample_30_sentences,
    sample_windows,
    smog_precise,
    smog_short,
    smog_simplified,
)
from smogsent.syllables import SyllableCounter

getcontext().prec = 40


def precise_by_hand(phi, sigma):
    return float(Decimal("1.043") * (Decimal(30) * Decimal(phi) / Decimal(sigma)).sqrt() + Decimal("3.1291"))


def short_by_hand(phi, sigma):
    inner = Decimal(phi) / Decimal(sigma) * (30 - sigma) + phi
    return float(3 + inner.sqrt())


def doc_with(n_sentences, poly_per_sentence=()):
    sentences = []
    for i in range(n_sentences):
        k = poly_per_sentence[i] if i < len(poly_per_sentence) else 0
        words = ["readability"] * k + [f"cat"]
        sentences.append(Sentence(tuple(WordToken(w) for w in words)))
    return NormalizedDoc(tuple(sentences))


def test_precise_examples():
    assert smog_precise(0, 30).grade == 3.1291
    assert smog_precise(30, 30).grade == pytest.approx(8.8419, abs=1e-3)
    assert smog_precise(30, 30).grade == pytest.approx(precise_by_hand(30, 30), abs=1e-12)
    # hand arithmetic: 1.043 * sqrt(60) + 3.1291 = 11.20814...
    assert smog_precise(60, 30).grade == pytest.approx(11.2081, abs=1e-4)
    assert smog_precise(60, 30).grade == pytest.approx(11.2073, abs=1e-3)
    assert smog_precise(1, 1).formula is Formula.PRECISE


def test_simplified_examples():
    assert smog_simplified(0).grade == 3.0
    assert smog_simplified(25).grade == 8.0
    assert smog_simplified(25).formula is Formula.SIMPLIFIED_CONVENTIONAL
    g = smog_simplified(25, "paper")
    assert g.grade == 35.0 and g.formula is Formula.SIMPLIFIED_PAPER
    with pytest.raises(ValueError):
        smog_simplified(4, "other")
    with pytest.raises(ValueError):
        smog_simplified(-1)


def test_short_examples():
    assert smog_short(25, 30).grade == 8.0
    assert smog_short(0, 1).grade == 3.0
    assert smog_short(5, 10).grade == pytest.approx(6.8730, abs=1e-3)
    assert smog_short(5, 10).grade == pytest.approx(short_by_hand(5, 10), abs=1e-12)
    with pytest.raises(ValueError):
        smog_short(3, 31)
    with pytest.raises(ValueError):
        smog_short(3, 0)


def test_inputs_validated():
    with pytest.raises(ValueError):
        smog_precise(-1, 3)
    with pytest.raises(ValueError):
        smog_precise(1, 0)


def test_sample_windows():
    assert sample_windows(45) == [*range(0, 10), *range(17, 27), *range(35, 45)]
    assert sample_windows(30) == list(range(30))
    with pytest.raises(TooShortError):
        sample_windows(29)


def test_sample_30_sentences_keeps_order():
    doc = doc_with(45, [1] * 45)
    sample = sample_30_sentences(doc)
    assert sample.sigma == 30
    assert sample.sentences[10] is doc.sentences[17]
    with pytest.raises(TooShortError):
        sample_30_sentences(doc_with(29))


def test_grade_document_dispatch():
    counter = SyllableCounter()
    g = grade_document(doc_with(1), counter)
    assert (g.grade, g.formula) == (3.0, Formula.SHORT_TEXT)
    g = grade_document(doc_with(10, [1, 1, 1, 1, 1]), counter)
    assert g.formula is Formula.SHORT_TEXT
    assert g.grade == pytest.approx(6.8730, abs=1e-3)
    thirty = doc_with(30, [1] * 30)
    g = grade_document(thirty, counter)
    assert g.formula is Formula.PRECISE
    assert g.grade == pytest.approx(precise_by_hand(30, 30), abs=1e-12)
    # 45 sentences: poly words only in the unsampled range 10..16 and 27..34
    poly = [0] * 10 + [3] * 7 + [0] * 10 + [3] * 8 + [0] * 10
    assert grade_document(doc_with(45, poly), counter).grade == 3.1291
    assert grade_document(thirty, counter, "simplified-conventional").grade == pytest.approx(3 + math.sqrt(30))
    assert grade_document(thirty, counter, "simplified-paper").grade == pytest.approx(30 + math.sqrt(30))
    with pytest.raises(UnsorableDocumentError):
        grade_document(NormalizedDoc(), counter)
    with pytest.raises(ValueError):
        grade_document(thirty, counter, "flesch")


@given(st.integers(0, 10**6))
def test_short_reduces_to_simplified_at_thirty(phi):
    assert abs(smog_short(phi, 30).grade - smog_simplified(phi).grade) < 1e-9


@given(st.integers(1, 10**5), st.integers(1, 30))
def test_formulas_increase_in_phi(phi, sigma):
    assert smog_precise(phi + 1, sigma).grade > smog_precise(phi, sigma).grade
    assert smog_short(phi + 1, sigma).grade > smog_short(phi, sigma).grade
    assert smog_simplified(phi + 1).grade > smog_simplified(phi).grade


@given(st.integers(0, 10**4), st.integers(1, 500), st.integers(1, 50))
def test_precise_depends_on_ratio_only(phi, sigma, k):
    assert smog_precise(k * phi, k * sigma).grade == pytest.approx(smog_precise(phi, sigma).grade, abs=1e-12)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=60), st.randoms(use_true_random=False))
def test_grade_independent_of_token_order(poly, rnd):
    counter = SyllableCounter()
    doc = doc_with(len(poly), poly)
    shuffled = NormalizedDoc(tuple(
        Sentence(tuple(rnd.sample(s.tokens, len(s.tokens)))) for s in doc.sentences
    ))
    assert grade_document(doc, counter) == grade_document(shuffled, counter)

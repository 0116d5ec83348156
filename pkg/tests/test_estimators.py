import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from smogsent.estimators import NaiveBayesPolarity, SmogScorer, TextNormalizer
from smogsent.normalize import AbbrevTable, NormalizedDoc
from smogsent.sentiment import parse_lexicon, starter_lexicon, train, classify, CLASSES
from smogsent.smog import smog_short

LEX = parse_lexicon(["mabuti\tpositive\tfilipino", "masama\tnegative\tfilipino", "senado\tneutral\tfilipino"])


def test_get_params_and_clone():
    est = NaiveBayesPolarity(alpha=0.5)
    assert est.get_params() == {"alpha": 0.5}
    assert clone(est).alpha == 0.5
    scorer = SmogScorer(filipino=True, long_formula="simplified-paper")
    assert scorer.get_params()["long_formula"] == "simplified-paper"
    assert clone(scorer).set_params(filipino=False).filipino is False


def test_text_normalizer():
    docs = TextNormalizer().fit_transform(["Sen. Cruz speaks.", "http://x.co"])
    assert docs[0].words == ["senator", "cruz", "speaks"]
    assert not docs[1].sorable
    plain = TextNormalizer(abbrevs=AbbrevTable()).fit_transform(["Sen. Cruz"])
    assert plain[0].sigma == 2
    with pytest.raises(TypeError):
        TextNormalizer().fit().transform("one string")
    with pytest.raises(NotFittedError):
        TextNormalizer().transform(["x"])


def test_smog_scorer():
    grades = SmogScorer().fit().transform(["The committee approved legislation. Good.", "@x http://y"])
    assert grades.shape == (2,)
    assert grades[0] == pytest.approx(smog_short(2, 2).grade)  # committee, legislation
    assert np.isnan(grades[1])
    with pytest.raises(ValueError):
        SmogScorer(long_formula="fog").fit()


def test_smog_scorer_exceptions_and_filipino():
    assert SmogScorer(exceptions={"cat": 3}).fit().transform(["cat"])[0] == pytest.approx(smog_short(1, 1).grade)
    assert SmogScorer(filipino=True).fit().transform(["aaa"])[0] == pytest.approx(smog_short(1, 1).grade)


def test_naive_bayes_fit_on_lexicon_words_matches_train():
    words = list(LEX.entries)
    labels = [LEX.entries[w].value for w in words]
    est = NaiveBayesPolarity().fit(words, labels)
    model = train(LEX)
    assert est.model_.priors == model.priors
    assert est.model_.likelihoods == model.likelihoods
    assert list(est.classes_) == ["positive", "negative", "neutral"]
    X = [["mabuti", "mabuti"], ["masama"], ["walang"], ["mabuti", "masama"]]
    assert list(est.predict(X)) == ["positive", "negative", "neutral", "neutral"]
    proba = est.predict_proba(X)
    assert proba.shape == (4, 3)
    np.testing.assert_allclose(proba.sum(axis=1), 1.0)
    np.testing.assert_allclose(proba[0], [classify(model, X[0])[1][c] for c in CLASSES])


def test_fit_lexicon_and_pipeline():
    est = NaiveBayesPolarity().fit_lexicon(starter_lexicon())
    assert est.predict([["happy", "thanks"]])[0] == "positive"
    pipe = make_pipeline(TextNormalizer(), NaiveBayesPolarity(alpha=0.5))
    texts = ["great great day", "awful awful news", "the senate met", "great news"]
    pipe.fit(texts, ["positive", "negative", "neutral", "positive"])
    assert list(pipe.predict(["Great day!", "Awful."])) == ["positive", "negative"]
    assert pipe.score(texts, ["positive", "negative", "neutral", "positive"]) == 1.0


def test_naive_bayes_validation():
    with pytest.raises(ValueError):
        NaiveBayesPolarity(alpha=0).fit(["a"], ["positive"])
    with pytest.raises(ValueError):
        NaiveBayesPolarity().fit(["a"], ["happy"])
    with pytest.raises(ValueError):
        NaiveBayesPolarity().fit(["a", "b"], ["positive"])
    with pytest.raises(NotFittedError):
        NaiveBayesPolarity().predict([["a"]])
    assert NaiveBayesPolarity().fit_lexicon(LEX).predict_proba([]).shape == (0, 3)


def test_normalized_docs_accepted():
    doc = TextNormalizer().fit_transform(["Mabuti!"])[0]
    assert isinstance(doc, NormalizedDoc)
    assert NaiveBayesPolarity().fit_lexicon(LEX).predict([doc])[0] == "positive"
    assert SmogScorer().fit().transform([doc])[0] == pytest.approx(smog_short(1, 1).grade)  # ma-bu-ti

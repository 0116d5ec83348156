import itertools
import math

import pytest
from hypothesis import given, strategies as st

from smogsent.normalize import normalize
from smogsent.sentiment import (
    CLASSES,
    Lexicon,
    LexiconError,
    Polarity,
    classify,
    load_lexicon,
    parse_lexicon,
    starter_lexicon,
    train,
    train_counts,
)

from oracles import brute_force_posterior

P, N, U = Polarity.POSITIVE, Polarity.NEGATIVE, Polarity.NEUTRAL
SYM = "# three words\nmabuti\tpositive\tfilipino\nmasama\tnegative\tfilipino\nsenado\tneutral\tfilipino\n"


@pytest.fixture
def sym_lexicon():
    return parse_lexicon(SYM.splitlines())


def lex(**words):
    return Lexicon({w: Polarity(p) for w, p in words.items()}, {w: "english" for w in words})


def test_load_lexicon(tmp_path, sym_lexicon):
    path = tmp_path / "lex.tsv"
    path.write_text(SYM, encoding="utf-8")
    loaded = load_lexicon(path)
    assert loaded == sym_lexicon
    assert len(loaded) == 3
    assert loaded.class_counts() == {P: 1, N: 1, U: 1}


@pytest.mark.parametrize(
    "text, line",
    [
        ("good\tpositive\tenglish\nbad\tnegative\tenglish\nok\tneutral\tenglish\ngood\tpositive\tenglish\n", 4),
        ("good\tpositive\n", 1),
        ("good\tgreat\tenglish\n", 1),
        ("good\tpositive\tklingon\n", 1),
    ],
)
def test_lexicon_errors_name_line(text, line):
    with pytest.raises(LexiconError) as info:
        parse_lexicon(text.splitlines())
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_empty_lexicon_rejected():
    with pytest.raises(LexiconError, match="no entries"):
        parse_lexicon([])


def test_train_examples(sym_lexicon):
    model = train(sym_lexicon, 1.0)
    assert all(model.priors[c] == pytest.approx(1 / 3) for c in CLASSES)
    # (1 + 1) / (1 + 1 * (3 + 1))
    assert model.likelihoods[P]["mabuti"] == pytest.approx(0.4)
    model = train(lex(good="positive", great="positive", bad="negative", meh="neutral"))
    assert model.priors[P] == 0.5


def test_likelihoods_normalized():
    model = train(starter_lexicon(), alpha=0.3)
    assert sum(model.priors.values()) == pytest.approx(1, abs=1e-9)
    for c in CLASSES:
        assert sum(model.likelihoods[c].values()) + model.unseen[c] == pytest.approx(1, abs=1e-12)


def test_train_rejects_bad_alpha(sym_lexicon):
    for alpha in (0, -1, math.inf, math.nan):
        with pytest.raises(ValueError):
            train(sym_lexicon, alpha)


def test_classify_examples(sym_lexicon):
    model = train(sym_lexicon)
    assert classify(model, ["mabuti", "mabuti"])[0] is P
    label, post = classify(model, ["walang", "alam"])
    assert label is U and all(v == pytest.approx(1 / 3) for v in post.values())
    label, post = classify(model, ["mabuti", "masama"])
    assert label is U
    assert post[P] == pytest.approx(post[N])
    expected_label, expected = brute_force_posterior(
        {"mabuti": "positive", "masama": "negative", "senado": "neutral"}, 1, ["mabuti", "masama"])
    assert expected_label == "neutral"
    for c in CLASSES:
        assert post[c] == pytest.approx(float(expected[c.value]), abs=1e-12)


def test_classify_normalized_doc(sym_lexicon):
    doc = normalize("Mabuti! Mabuti ang senado.")
    assert classify(train(sym_lexicon), doc)[0] is P
    with pytest.raises(TypeError):
        classify(train(sym_lexicon), "mabuti")


def test_zero_prior_class_never_wins():
    model = train_counts({P: {"a": 1}, N: {"b": 1}}, {P: 1, N: 1})
    label, post = classify(model, ["a"])
    assert label is P and post[U] == 0.0


def test_long_document_no_underflow(sym_lexicon):
    label, post = classify(train(sym_lexicon), ["masama"] * 5000 + ["mabuti"] * 10)
    assert label is N
    assert all(math.isfinite(v) for v in post.values())


WORDS = ["mabuti", "masama", "senado", "wala"]


@given(st.lists(st.sampled_from(WORDS), max_size=12), st.randoms(use_true_random=False))
def test_permutation_invariant(doc, rnd):
    model = train(parse_lexicon(SYM.splitlines()))
    shuffled = rnd.sample(doc, len(doc))
    a, b = classify(model, doc), classify(model, shuffled)
    assert a[0] == b[0]
    for c in CLASSES:
        assert a[1][c] == pytest.approx(b[1][c], abs=1e-12)


@given(st.lists(st.sampled_from(WORDS), max_size=12), st.floats(0.01, 10))
def test_posteriors_sum_to_one_and_positive(doc, alpha):
    _, post = classify(train(parse_lexicon(SYM.splitlines()), alpha), doc)
    assert sum(post.values()) == pytest.approx(1, abs=1e-9)
    assert all(v > 0 for v in post.values())


@pytest.mark.parametrize("k", range(1, 30))
@pytest.mark.parametrize("word, cls", [("mabuti", P), ("masama", N), ("senado", U)])
def test_single_class_word_repeated(sym_lexicon, word, cls, k):
    assert classify(train(sym_lexicon), [word] * k)[0] is cls


def test_matches_brute_force_on_small_corpora():
    lexicon = {"good": "positive", "bad": "negative", "law": "neutral", "joy": "positive"}
    model = train(Lexicon({w: Polarity(p) for w, p in lexicon.items()}, {}), 0.5)
    for n in range(5):
        for doc in itertools.product(list(lexicon) + ["oov"], repeat=n):
            label, post = classify(model, list(doc))
            exp_label, exp = brute_force_posterior(lexicon, 0.5, list(doc))
            assert label.value == exp_label
            for c in CLASSES:
                assert abs(post[c] - float(exp[c.value])) < 1e-9

"""Tokenization, label keys, lemma maps, and n-gram matching."""

from kgforge.textnorm import (
    STOPWORDS,
    LemmaDict,
    content_tokens,
    label_key,
    label_to_id_fragment,
    match_ngrams,
    normalize_label,
    tokenize,
)


def test_tokenize_splits_on_non_alnum():
    assert tokenize("Where might a lizard live?") == [
        "where", "might", "a", "lizard", "live",
    ]
    assert tokenize("self-driving car") == ["self", "driving", "car"]
    assert tokenize("  ") == []


def test_tokenize_keeps_digits():
    assert tokenize("route 66") == ["route", "66"]


def test_label_key_collapses_case_and_separators():
    assert label_key("Tropical Rainforest") == "tropical rainforest"
    assert label_key("tropical_rainforest") == "tropical rainforest"
    assert label_key(" tropical  rainforest ") == "tropical rainforest"
    assert label_key("") == ""


def test_normalize_label_and_id_fragment():
    assert normalize_label("  Tropical  Rainforest ") == "tropical rainforest"
    assert label_to_id_fragment("Tropical Rainforest") == "tropical_rainforest"


def test_stopwords_contain_function_words_only():
    for word in ("the", "a", "of", "where", "could"):
        assert word in STOPWORDS
    for word in ("lizard", "water", "place"):
        assert word not in STOPWORDS


def test_content_tokens_drops_stopwords_and_lemmatizes():
    lemmas = LemmaDict({"lizards": "lizard", "lives": "live"})
    assert content_tokens("Where do the lizards have their lives?", lemmas) == [
        "lizard", "live",
    ]


def test_lemma_dict_identity_fallback():
    lemmas = LemmaDict({"mice": "mouse"})
    assert lemmas.lemma("mice") == "mouse"
    assert lemmas.lemma("cat") == "cat"


def test_lemma_dict_from_file(tmp_path):
    path = tmp_path / "lemmas.tsv"
    path.write_text("mice\tmouse\nlives\tlive\n")
    lemmas = LemmaDict.load(path)
    assert lemmas.lemma("mice") == "mouse"
    assert lemmas.lemma("lives") == "live"


def test_match_ngrams_prefers_longest_span():
    entries = {"tropical rainforest": "A", "rainforest": "B", "tropical": "C"}
    assert match_ngrams(["tropical", "rainforest"], entries.get) == [
        "tropical rainforest",
    ]


def test_match_ngrams_no_overlap():
    entries = {"a b": "AB", "b c": "BC", "c": "C"}
    assert match_ngrams(["a", "b", "c"], entries.get) == ["a b", "c"]


def test_match_ngrams_caps_span_length():
    entries = {"a b c d": "LONG", "a b c": "TRI", "d": "D"}
    assert match_ngrams(["a", "b", "c", "d"], entries.get) == ["a b c", "d"]


def test_match_ngrams_empty_inputs():
    assert match_ngrams([], {"a": 1}.get) == []
    assert match_ngrams(["q"], {}.get) == []

"""Tests for tokenization and document-frequency counting."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genderwords.text import (
    CorpusIndex,
    DocFrequencyTable,
    build_table,
    tokenize,
    tokenize_with_offsets,
)

from helpers import mk_corpus, mk_post


# ── tokenize ────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    "text,expected",
    [
        ("Practice #SocialDistancing now!", ["practice", "#socialdistancing", "now"]),
        ("", []),
        ("COVID-19", ["covid", "19"]),
        ("don't panic", ["don't", "panic"]),
        ("@Bob said hi", ["@bob", "said", "hi"]),
        ("it", ["it"]),
        ("snake_case stays", ["snake_case", "stays"]),
        ("über café", ["über", "café"]),
        ("#a#b", ["#a", "#b"]),
        ("price: $5.99", ["price", "5", "99"]),
    ],
)
def test_tokenize_cases(text, expected):
    assert tokenize(text) == expected


@given(st.text(max_size=120))
def test_tokens_never_contain_whitespace_or_empties(text):
    for tok in tokenize(text):
        assert tok
        assert not any(ch.isspace() for ch in tok)
        assert tok == tok.lower()


@given(st.text(alphabet=st.characters(codec="utf-8"), max_size=120))
def test_offsets_agree_with_tokenize(text):
    with_offsets = tokenize_with_offsets(text)
    assert [t for t, _, _ in with_offsets] == tokenize(text)
    for tok, start, end in with_offsets:
        assert 0 <= start < end <= len(text)
        assert text[start:end].lower() == tok


# ── build_table ─────────────────────────────────────────────────────────


def test_presence_not_frequency():
    corpus = mk_corpus(mk_post(1, "virus virus virus", "f"))
    table = build_table(corpus)
    assert table.df("virus") == (1, 0)
    assert table.n_female == 1 and table.n_male == 0


def test_unknown_posts_excluded():
    corpus = mk_corpus(
        mk_post(1, "virus here", "u"),
        mk_post(2, "virus there", "f"),
        mk_post(3, "nothing", "m"),
    )
    table = build_table(corpus)
    assert table.df("virus") == (1, 0)
    assert (table.n_female, table.n_male) == (1, 1)


def test_totals_count_posts_not_terms():
    corpus = mk_corpus(
        mk_post(1, "school", "f"),
        mk_post(2, "weather", "f"),
    )
    table = build_table(corpus)
    assert table.df("school") == (1, 0)
    assert table.n_female == 2


def test_untestable_when_one_gender_missing():
    table = build_table(mk_corpus(mk_post(1, "hello", "f")))
    assert not table.testable
    both = build_table(mk_corpus(mk_post(1, "hello", "f"), mk_post(2, "hello", "m")))
    assert both.testable


def test_order_independence():
    posts = [
        mk_post(i, text, g, hour=i % 20)
        for i, (text, g) in enumerate(
            [("a b c", "f"), ("b c", "m"), ("a", "f"), ("c d", "u"), ("d", "m")] * 4
        )
    ]
    t1 = build_table(mk_corpus(*posts))
    shuffled = posts[:]
    random.Random(7).shuffle(shuffled)
    t2 = build_table(shuffled)
    assert t1.counts == t2.counts
    assert (t1.n_female, t1.n_male) == (t2.n_female, t2.n_male)


def _brute_force_table(posts):
    """Independent per-term recount: scan every post once per term."""
    vocab = set()
    for p in posts:
        vocab.update(tokenize(p.text))
    out = {}
    for term in vocab:
        f = sum(1 for p in posts if p.gender.value == "female" and term in tokenize(p.text))
        m = sum(1 for p in posts if p.gender.value == "male" and term in tokenize(p.text))
        out[term] = [f, m]
    return out


def test_matches_brute_force_recount():
    rnd = random.Random(42)
    words = [f"w{i}" for i in range(40)]
    posts = []
    for i in range(600):
        text = " ".join(rnd.choices(words, k=rnd.randint(0, 12)))
        posts.append(mk_post(i, text, rnd.choice("fmu"), hour=rnd.randint(0, 23)))
    table = build_table(mk_corpus(*posts))
    brute = _brute_force_table(posts)
    assert {t: list(c) for t, c in table.counts.items()} == brute


def test_df_bounded_by_totals():
    rnd = random.Random(3)
    posts = [
        mk_post(i, " ".join(rnd.choices(["x", "y", "z"], k=3)), rnd.choice("fm"))
        for i in range(100)
    ]
    table = build_table(mk_corpus(*posts))
    for term in table.counts:
        f, m = table.df(term)
        assert 0 <= f <= table.n_female
        assert 0 <= m <= table.n_male


def test_parallel_matches_serial():
    rnd = random.Random(11)
    words = [f"w{i}" for i in range(60)]
    posts = [
        mk_post(i, " ".join(rnd.choices(words, k=8)), rnd.choice("fmu"))
        for i in range(4_000)
    ]
    corpus = mk_corpus(*posts)
    serial = build_table(corpus, jobs=1)
    parallel = build_table(corpus, jobs=2)
    assert serial.counts == parallel.counts
    assert (serial.n_female, serial.n_male) == (parallel.n_female, parallel.n_male)


def test_merge_accumulates():
    a = DocFrequencyTable(counts={"x": [1, 0]}, n_female=1, n_male=0)
    b = DocFrequencyTable(counts={"x": [0, 2], "y": [1, 0]}, n_female=1, n_male=2)
    a.merge(b)
    assert a.counts == {"x": [1, 2], "y": [1, 0]}
    assert (a.n_female, a.n_male) == (2, 2)


def test_csv_dump(tmp_path):
    table = build_table(mk_corpus(mk_post(1, "b a", "f"), mk_post(2, "a", "m")))
    out = tmp_path / "table.csv"
    table.to_csv(out)
    assert out.read_text() == "term,df_female,df_male\na,1,1\nb,1,0\n"


# ── CorpusIndex ─────────────────────────────────────────────────────────


def test_index_postings_and_totals():
    corpus = mk_corpus(
        mk_post(1, "alpha beta", "f", day=0),
        mk_post(2, "beta", "m", day=0),
        mk_post(3, "alpha alpha", "f", day=2),
        mk_post(4, "gamma", "u", day=2),
    )
    index = CorpusIndex(corpus)
    assert len(index.days) == 3  # day 1 has no posts but is in range
    assert index.posts_with("alpha") == [0, 2]
    assert index.posts_with("beta") == [0, 1]
    assert index.document_frequency("gamma") == 1  # unknown posts are indexed
    assert index.posts_with("nope") == []
    assert index.day_totals_female == [1, 0, 1]
    assert index.day_totals_male == [1, 0, 0]

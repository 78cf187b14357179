"""Tests for KWIC sampling and the theme store."""

import math
from collections import Counter

import pytest

from genderwords.analysis import analyze
from genderwords.explore import (
    KwicSample,
    ThemeError,
    ThemeStore,
    format_kwic,
    kwic,
)
from genderwords.gender import NameLexicon
from genderwords.synth import SynthSpec, TermSpec, synth
from genderwords.text import CorpusIndex

from helpers import mk_corpus, mk_post


@pytest.fixture(scope="module")
def kwic_corpus():
    posts = [mk_post(i, f"the league match number {i}", "f", hour=i % 24) for i in range(40)]
    posts += [mk_post(100 + i, "nothing here", "m", hour=i % 24) for i in range(10)]
    return mk_corpus(*posts)


# ── kwic ────────────────────────────────────────────────────────────────


def test_default_sample_size_is_ten(kwic_corpus):
    sample = kwic("league", kwic_corpus, seed=1)
    assert sample.n_requested == 10
    assert sample.n_returned == 10
    assert len(sample.entries) == 10


def test_small_population_returns_all():
    corpus = mk_corpus(*[mk_post(i, "rare term here", "f", hour=i) for i in range(3)])
    sample = kwic("rare", corpus, n=10, seed=5)
    assert sample.n_returned == 3


def test_absent_term_returns_empty_sample(kwic_corpus):
    sample = kwic("zzz", kwic_corpus, n=10, seed=1)
    assert sample.n_returned == 0
    assert sample.entries == []


def test_same_seed_same_sample(kwic_corpus):
    a = kwic("league", kwic_corpus, seed=42)
    b = kwic("league", kwic_corpus, seed=42)
    assert [e.post_id for e in a.entries] == [e.post_id for e in b.entries]
    c = kwic("league", kwic_corpus, seed=43)
    assert [e.post_id for e in a.entries] != [e.post_id for e in c.entries]


def test_spans_cover_term_occurrences():
    corpus = mk_corpus(mk_post(1, "League of leagues: LEAGUE again", "f"))
    sample = kwic("league", corpus, n=5, seed=0)
    [entry] = sample.entries
    got = [entry.text[s:e].lower() for s, e in entry.spans]
    assert got == ["league", "league"]  # "leagues" is a different token


def test_sampling_is_uniform(kwic_corpus):
    # Inclusion frequency of each qualifying post ~ Binomial(trials, 10/40).
    index = CorpusIndex(kwic_corpus)
    trials = 1_500
    counts = Counter()
    for seed in range(trials):
        for e in kwic("league", kwic_corpus, seed=seed, index=index).entries:
            counts[e.post_id] += 1
    p = 10 / 40
    se = math.sqrt(p * (1 - p) / trials)
    for i in range(40):
        freq = counts[str(i)] / trials
        assert abs(freq - p) <= 3 * se + 1e-9, (i, freq)


def test_format_kwic_brackets_matches():
    corpus = mk_corpus(mk_post(1, "big league news", "f"))
    text = format_kwic(kwic("league", corpus, n=1, seed=0))
    assert "[league]" in text
    assert "female" in text


# ── ThemeStore ──────────────────────────────────────────────────────────


KNOWN = {"league", "game", "nba", "school", "nurse"}


def test_create_assign_export_flow():
    store = ThemeStore(analysis_hash="abc123")
    sport = store.create("Sport", gender_tendency="male")
    store.assign(sport.id, {"league", "game", "nba"}, KNOWN)
    assert sorted(store.get(sport.id).terms) == ["game", "league", "nba"]
    assert store.theme_of("league").name == "Sport"


def test_assign_moves_between_themes():
    store = ThemeStore()
    sport = store.create("Sport")
    politics = store.create("Politics")
    store.assign(sport.id, {"league"}, KNOWN)
    store.assign(politics.id, {"league"}, KNOWN)
    assert store.theme_of("league").name == "Politics"
    assert "league" not in store.get(sport.id).terms


def test_assign_unknown_term_rejected_with_name():
    store = ThemeStore()
    theme = store.create("Sport")
    with pytest.raises(ThemeError, match="wibble"):
        store.assign(theme.id, {"league", "wibble"}, KNOWN)
    # Atomic: nothing applied.
    assert store.get(theme.id).terms == []


def test_unknown_theme_rejected():
    store = ThemeStore()
    with pytest.raises(ThemeError):
        store.assign("th9999", {"league"}, KNOWN)
    with pytest.raises(ThemeError):
        store.delete("th9999")


def test_delete_unassigns_terms():
    store = ThemeStore()
    theme = store.create("Sport")
    store.assign(theme.id, {"league"}, KNOWN)
    store.delete(theme.id)
    assert store.theme_of("league") is None
    assert store.list_themes() == []


def test_duplicate_names_rejected():
    store = ThemeStore()
    store.create("Sport")
    with pytest.raises(ThemeError):
        store.create("Sport")
    other = store.create("Politics")
    with pytest.raises(ThemeError):
        store.update(other.id, name="Sport")


def test_tendency_validated():
    store = ThemeStore()
    with pytest.raises(ThemeError):
        store.create("X", gender_tendency="both")


def test_unassign():
    store = ThemeStore()
    theme = store.create("Sport")
    store.assign(theme.id, {"league", "game"}, KNOWN)
    store.unassign({"game"})
    assert store.get(theme.id).terms == ["league"]


def test_roundtrip_bytes_identical(tmp_path):
    store = ThemeStore(analysis_hash="deadbeef")
    sport = store.create("Sport", gender_tendency="male", notes="ball games")
    store.assign(sport.id, {"league", "nba"}, KNOWN)
    store.create("Health", gender_tendency="female")
    p1 = tmp_path / "themes.json"
    store.save(p1)
    loaded = ThemeStore.load(p1)
    p2 = tmp_path / "again.json"
    loaded.save(p2)
    assert p1.read_bytes() == p2.read_bytes()
    # ids keep counting after reload
    assert loaded.create("Third").id == "th0003"


def test_load_rejects_other_files(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"format": "other"}')
    with pytest.raises(ValueError):
        ThemeStore.load(p)


def test_export_report_groups_terms():
    spec = SynthSpec(
        planted=(TermSpec("league", 0.02, 0.12), TermSpec("nurse", 0.10, 0.02)),
        background=tuple(TermSpec(f"w{i:02d}", 0.05, 0.05) for i in range(20)),
        n_days=3,
    )
    corpus = synth(spec, 6_000, seed=3)
    result = analyze(corpus, lexicon=NameLexicon.fixture())
    assert {"league", "nurse"} <= result.included_terms

    store = ThemeStore(analysis_hash="h")
    sport = store.create("Sport", gender_tendency="male")
    store.assign(sport.id, {"league"}, result.included_terms)
    report = store.export_report(result)
    [group] = report["themes"]
    assert group["name"] == "Sport"
    assert [r["term"] for r in group["terms"]] == ["league"]
    assert group["terms"][0]["direction"] == "male"
    unassigned = {r["term"] for r in report["unassigned"]}
    assert "nurse" in unassigned and "league" not in unassigned

    csv_text = store.export_report_csv(result)
    assert csv_text.splitlines()[0].startswith("theme,gender_tendency,term")
    assert any(line.startswith("Sport,male,league") for line in csv_text.splitlines())

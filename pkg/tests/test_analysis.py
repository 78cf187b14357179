"""Tests for the overall/daily detection pipeline and exploration statistics."""

import random

import pytest

from genderwords.analysis import (
    AnalysisError,
    AnalysisResult,
    DailyStarRecord,
    Direction,
    analyze,
    analyze_daily,
    analyze_overall,
    time_series,
    top_associations,
)
from genderwords.gender import NameLexicon
from genderwords.stats import SignificanceLevel
from genderwords.synth import SynthSpec, TermSpec, synth
from genderwords.text import CorpusIndex, DocFrequencyTable, build_table

from helpers import mk_corpus, mk_post
from oracles import chi2_reference, naive_overall


def table_from(counts, n_f, n_m):
    return DocFrequencyTable(
        counts={t: list(c) for t, c in counts.items()}, n_female=n_f, n_male=n_m
    )


# ── analyze_overall ─────────────────────────────────────────────────────


def test_equal_proportions_not_significant():
    table = table_from({"x": (50, 50)}, 100, 100)
    [stats] = analyze_overall(table)
    assert stats.chi2 == 0.0
    assert stats.level is SignificanceLevel.NONE


def test_planted_term_reaches_p001_with_direction():
    # 10% female / 2% male at 10k posts per gender: chi2 ~ 567.
    table = table_from({"x": (1000, 200)}, 10_000, 10_000)
    [stats] = analyze_overall(table)
    assert stats.level is SignificanceLevel.P001
    assert stats.direction is Direction.FEMALE
    assert stats.chi2 == pytest.approx(chi2_reference(1000, 9000, 200, 9800), rel=1e-12)
    assert stats.ratio == pytest.approx(5.0)
    assert stats.odds_ratio == pytest.approx((1000 * 9800) / (9000 * 200), rel=1e-12)


def test_singleton_term_is_prefiltered_out():
    table = table_from({"x": (1, 0), "y": (3000, 100)}, 10_000, 10_000)
    results = {t.term: t for t in analyze_overall(table)}
    assert "x" not in results  # too rare to ever reach 3.841
    assert "y" in results


def test_refuses_single_gender_corpus():
    with pytest.raises(AnalysisError):
        analyze_overall(table_from({"x": (5, 0)}, 10, 0))


def test_rejects_bad_alphas():
    table = table_from({"x": (5, 5)}, 10, 10)
    with pytest.raises(AnalysisError):
        analyze_overall(table, alphas=[0.5, 0.2, 0.1, 0.05])
    with pytest.raises(AnalysisError):
        analyze_overall(table, alphas=[])


def test_matches_naive_reimplementation_on_small_corpora():
    rnd = random.Random(99)
    spec = SynthSpec(
        planted=(TermSpec("sig", 0.30, 0.05),),
        background=tuple(TermSpec(f"w{i:02d}", rnd.uniform(0.01, 0.3), 0.0) for i in range(0)),
        n_days=3,
    )
    # Random mid-density vocabulary, built by hand for variety.
    words = [f"w{i:02d}" for i in range(25)]
    posts = []
    for i in range(800):
        g = rnd.choice("fm")
        k = rnd.randint(0, 6)
        text = " ".join(rnd.choices(words, k=k))
        if g == "f" and rnd.random() < 0.25:
            text += " sig"
        if g == "m" and rnd.random() < 0.05:
            text += " sig"
        posts.append(mk_post(i, text, g, day=i % 3, hour=i % 24))
    table = build_table(mk_corpus(*posts))
    got = {t.term: t for t in analyze_overall(table)}
    kept, levels = naive_overall(
        {t: tuple(c) for t, c in table.counts.items()}, table.n_female, table.n_male
    )
    assert set(got) == set(kept)
    for term, (chi2, p) in kept.items():
        assert got[term].chi2 == pytest.approx(chi2, rel=1e-9)
        assert got[term].p == pytest.approx(p, rel=1e-6, abs=1e-12)
        assert got[term].level.stars == levels.get(term, 0)


def test_direction_flip_symmetry():
    table = table_from({"x": (300, 80), "y": (10, 40)}, 1_000, 1_000)
    flipped = table_from({"x": (80, 300), "y": (40, 10)}, 1_000, 1_000)
    for a, b in zip(analyze_overall(table), analyze_overall(flipped)):
        assert a.term == b.term
        assert a.chi2 == pytest.approx(b.chi2, rel=1e-12)
        assert a.level is b.level
        assert a.direction is not b.direction


# ── analyze_daily / stars ───────────────────────────────────────────────


def day_block(term_f, empty_f, term_m, empty_m, day):
    """Posts for one day: term_f female posts with 'x', empty_f without, etc."""
    posts = []
    i = 0
    for count, gender, text in (
        (term_f, "f", "x"),
        (empty_f, "f", ""),
        (term_m, "m", "x"),
        (empty_m, "m", ""),
    ):
        for _ in range(count):
            posts.append(mk_post(f"d{day}-{i}", text, gender, day=day, hour=i % 24))
            i += 1
    return posts


def test_daily_star_weights_and_inclusion():
    # Day 0, 1: chi2 ~ 35 (p ~ 3e-9) -> 3 stars each.
    # Day 2: chi2 ~ 9.77 (p ~ 0.0018) -> passes 0.01 but not 0.001 -> 2 stars.
    posts = (
        day_block(40, 60, 5, 95, day=0)
        + day_block(40, 60, 5, 95, day=1)
        + day_block(30, 70, 12, 88, day=2)
    )
    corpus = mk_corpus(*posts)
    daily = analyze_daily(corpus)
    rec = daily["x"]
    assert rec.stars_by_day == [3, 3, 2]
    assert rec.star_total == 8
    assert rec.days == 3
    result = analyze(corpus)
    assert result.included_daily("x")
    assert "x" in result.included_terms


def test_single_p05_day_gets_one_star_not_included_daily():
    # chi2 ~ 5.98 -> p ~ 0.0145: passes 0.05 only.
    corpus = mk_corpus(*day_block(20, 80, 8, 92, day=0))
    daily = analyze_daily(corpus)
    assert daily["x"].stars_by_day == [1]
    result = analyze(corpus)
    assert not result.included_daily("x")
    assert result.daily_record("x").star_total == 1


def test_never_significant_term_has_no_stars():
    corpus = mk_corpus(*day_block(10, 90, 10, 90, day=0))
    daily = analyze_daily(corpus)
    assert "x" not in daily
    result = analyze(corpus)
    assert result.daily_record("x").stars_by_day == [0]


def test_day_missing_a_gender_contributes_zero_stars():
    posts = day_block(40, 60, 5, 95, day=0) + day_block(40, 60, 5, 95, day=2)
    # Day 1: female-only posts.
    posts += [mk_post(f"mid{i}", "x", "f", day=1) for i in range(50)]
    corpus = mk_corpus(*posts)
    rec = analyze_daily(corpus)["x"]
    assert len(rec.stars_by_day) == 3
    assert rec.stars_by_day[1] == 0
    assert rec.star_total == 6


def test_star_arrays_span_calendar_gap_days():
    posts = day_block(40, 60, 5, 95, day=0) + day_block(40, 60, 5, 95, day=3)
    rec = analyze_daily(mk_corpus(*posts))["x"]
    assert rec.stars_by_day == [3, 0, 0, 3]


def test_analyze_daily_refuses_empty():
    with pytest.raises(AnalysisError):
        analyze_daily(mk_corpus())


# ── analyze / AnalysisResult ────────────────────────────────────────────


@pytest.fixture(scope="module")
def synth_result():
    spec = SynthSpec(
        planted=(TermSpec("sig_f", 0.12, 0.02), TermSpec("sig_m", 0.01, 0.09)),
        background=tuple(TermSpec(f"w{i:03d}", 0.04, 0.04) for i in range(60)),
        n_days=5,
    )
    corpus = synth(spec, 8_000, seed=13)
    return analyze(corpus, lexicon=NameLexicon.fixture())


def test_included_union_rule(synth_result):
    r = synth_result
    overall = {t.term for t in r.overall_terms if t.level is not SignificanceLevel.NONE}
    starred = {t for t in r.daily if r.daily_record(t).star_total >= 7}
    assert r.included_terms == overall | starred
    assert {"sig_f", "sig_m"} <= r.included_terms


def test_config_echo(synth_result):
    cfg = synth_result.config
    assert cfg["alphas"] == [0.05, 0.01, 0.001]
    assert cfg["star_threshold"] == 7
    assert cfg["prefilter_critical"] == 3.841
    assert cfg["gender_threshold"] == 0.90
    assert cfg["n_terms_tested"] <= cfg["n_terms_total"]


def test_result_roundtrip_bytes(synth_result, tmp_path):
    path = tmp_path / "result.json"
    synth_result.save(path)
    loaded = AnalysisResult.load(path)
    again = tmp_path / "again.json"
    loaded.save(again)
    assert path.read_bytes() == again.read_bytes()
    assert loaded.included_terms == synth_result.included_terms


def test_jobs_do_not_change_result_bytes():
    spec = SynthSpec(
        planted=(TermSpec("sig", 0.15, 0.03),),
        background=tuple(TermSpec(f"w{i:03d}", 0.05, 0.05) for i in range(40)),
        n_days=3,
    )
    corpus = synth(spec, 6_000, seed=21)
    lex = NameLexicon.fixture()
    one = analyze(corpus, lexicon=lex, jobs=1).to_json_bytes()
    two = analyze(corpus, lexicon=lex, jobs=2).to_json_bytes()
    assert one == two


def test_csv_export(synth_result, tmp_path):
    out = tmp_path / "terms.csv"
    synth_result.to_csv(out)
    lines = out.read_text().splitlines()
    assert lines[0] == "term,direction,chi2,level,stars_total,prop_female,prop_male,odds_ratio"
    assert len(lines) == 1 + len(synth_result.included_terms)


def test_analyze_refuses_unlabeled_corpus():
    corpus = mk_corpus(mk_post(1, "hello", "u"), mk_post(2, "there", "u"))
    with pytest.raises(AnalysisError):
        analyze(corpus)


# ── associations ────────────────────────────────────────────────────────


def test_perfect_dependence_ranks_first():
    posts = [mk_post(i, "anchor partner", "f", hour=i % 24) for i in range(6)]
    posts += [mk_post(10 + i, "noise word", "m", hour=i % 24) for i in range(6)]
    corpus = mk_corpus(*posts)
    ranked = top_associations("anchor", corpus, k=5, min_df=1)
    assert ranked and ranked[0].word == "partner"


def test_uniform_word_not_returned():
    posts = [mk_post(i, "anchor common", "f", hour=i % 24) for i in range(10)]
    posts += [mk_post(20 + i, "common other", "m", hour=i % 24) for i in range(10)]
    ranked = top_associations("anchor", mk_corpus(*posts), k=10, min_df=1)
    assert all(e.word != "common" for e in ranked)


def test_absent_term_returns_empty():
    corpus = mk_corpus(mk_post(1, "something", "f"))
    assert top_associations("missing", corpus, k=5) == []


def test_association_matches_brute_force_on_small_corpus():
    rnd = random.Random(4)
    words = ["red", "blue", "green", "cyan", "pink"]
    posts = []
    for i in range(20):
        text = " ".join(rnd.choices(words, k=rnd.randint(1, 4)))
        if rnd.random() < 0.5:
            text += " anchor"
        posts.append(mk_post(i, text, rnd.choice("fm"), hour=i))
    corpus = mk_corpus(*posts)
    got = [(e.word, e.chi2) for e in top_associations("anchor", corpus, k=100, min_df=1)]

    # Brute force: recount containment sets from scratch per word.
    texts = [set(p.text.split()) for p in corpus.posts]
    with_term = [t for t in texts if "anchor" in t]
    without = [t for t in texts if "anchor" not in t]
    expected = []
    for w in words:
        a = sum(1 for t in with_term if w in t)
        b = len(with_term) - a
        c = sum(1 for t in without if w in t)
        d = len(without) - c
        if a == 0 or a / len(with_term) <= (c / len(without) if without else 0):
            continue
        chi2 = chi2_reference(a, b, c, d)
        if chi2 > 0:
            expected.append((w, chi2))
    expected.sort(key=lambda wc: (-wc[1], wc[0]))
    assert [w for w, _ in got] == [w for w, _ in expected]
    for (gw, gc), (ew, ec) in zip(got, expected):
        assert gc == pytest.approx(ec, rel=1e-9)


def test_association_direction_reports_gender_lean():
    posts = [mk_post(i, "anchor fem", "f", hour=i % 24) for i in range(8)]
    posts += [mk_post(30 + i, "anchor fem", "f", hour=i % 24) for i in range(2)]
    posts += [mk_post(50 + i, "other", "m", hour=i % 24) for i in range(10)]
    ranked = top_associations("anchor", mk_corpus(*posts), k=5, min_df=1)
    fem = next(e for e in ranked if e.word == "fem")
    assert fem.direction is Direction.FEMALE


# ── time series ─────────────────────────────────────────────────────────


def test_series_proportions_and_missing_days():
    posts = [mk_post(i, "virus" if i < 50 else "other", "f", day=0, hour=i % 24) for i in range(1000)]
    posts += [mk_post(2000 + i, "virus", "m", day=0, hour=i % 24) for i in range(10)]
    posts += [mk_post(3000 + i, "virus", "f", day=1, hour=i % 24) for i in range(5)]
    corpus = mk_corpus(*posts)
    series = time_series("virus", corpus)
    assert len(series) == 2
    assert series[0]["prop_female"] == pytest.approx(0.05)
    assert series[0]["prop_male"] == pytest.approx(1.0)
    assert series[1]["prop_male"] is None  # no male posts that day
    assert series[1]["prop_female"] == pytest.approx(1.0)


def test_series_length_equals_corpus_days_for_any_term():
    posts = [mk_post(i, "a b", "f", day=d) for d, i in ((0, 1), (4, 2))]
    posts += [mk_post(3, "a", "m", day=2)]
    corpus = mk_corpus(*posts)
    index = CorpusIndex(corpus)
    for term in ("a", "b", "zz-not-there"):
        assert len(time_series(term, corpus, index=index)) == 5


# ── DailyStarRecord arithmetic ──────────────────────────────────────────


def test_star_record_arithmetic():
    rec = DailyStarRecord("x", [3, 3, 2, 0, 0])
    assert rec.star_total == 8
    assert rec.days == 3

"""Gendered-term detection: overall and per-day testing, star aggregation,
effect sizes, word associations, and daily usage series.

The procedure per test family (whole corpus, or one calendar day):
rarity-prefilter the vocabulary, chi-square every survivor, convert to
p-values, and run Benjamini-Hochberg once per alpha level.  A term's level
is the most stringent alpha it passes; per-day levels weigh 1/2/3 stars and
a term is daily-included when its stars across all days reach the threshold.
"""

from __future__ import annotations

import csv
import enum
import json
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from .corpus import Corpus
from .gender import GenderLabel, NameLexicon
from .stats import (
    CHI2_CRIT_P05,
    DEFAULT_ALPHAS,
    SignificanceLevel,
    bh_select,
    chi2_cells,
    chi2_sf,
    passes_prefilter,
)
from .text import CorpusIndex, DocFrequencyTable, build_table, tokenize

RESULT_FORMAT = "genderwords-analysis"
RESULT_VERSION = 1

DEFAULT_STAR_THRESHOLD = 7
DEFAULT_ASSOCIATION_MIN_DF = 5


class AnalysisError(ValueError):
    """Raised when an analysis precondition fails (e.g. a gender has no posts)."""


class Direction(str, enum.Enum):
    FEMALE = "female"
    MALE = "male"


@dataclass
class TermStats:
    """Overall contingency statistics for one term."""

    term: str
    df_female: int
    df_male: int
    n_female: int
    n_male: int
    chi2: float
    p: float | None                 # None when the prefilter excluded the term
    level: SignificanceLevel
    direction: Direction
    prop_female: float
    prop_male: float
    ratio: float | None             # major/minor proportion; None when minor is 0
    odds_ratio: float | None        # ad/bc; None when bc is 0


@dataclass
class DailyStarRecord:
    """Per-day significance stars for one term across the corpus days."""

    term: str
    stars_by_day: list[int]

    @property
    def star_total(self) -> int:
        return sum(self.stars_by_day)

    @property
    def days(self) -> int:
        return sum(1 for s in self.stars_by_day if s > 0)


@dataclass
class AssociationEntry:
    word: str
    chi2: float
    direction: Direction | None     # gender lean of the associated word


def _validate_alphas(alphas) -> list[float]:
    out = sorted(set(float(a) for a in alphas), reverse=True)
    if not out or len(out) > 3:
        raise AnalysisError("between 1 and 3 alpha levels are supported")
    for a in out:
        if not 0.0 < a < 1.0:
            raise AnalysisError(f"alpha {a!r} outside (0, 1)")
    return out


def _term_stats(term, f, m, n_f, n_m, p, level) -> TermStats:
    chi2 = chi2_cells(f, n_f - f, m, n_m - m)
    prop_f = f / n_f
    prop_m = m / n_m
    if prop_f >= prop_m:
        direction = Direction.FEMALE
        major, minor = prop_f, prop_m
    else:
        direction = Direction.MALE
        major, minor = prop_m, prop_f
    ratio = major / minor if minor > 0 else None
    bc = (n_f - f) * m
    odds = (f * (n_m - m)) / bc if bc > 0 else None
    return TermStats(
        term=term,
        df_female=f,
        df_male=m,
        n_female=n_f,
        n_male=n_m,
        chi2=chi2,
        p=p,
        level=level,
        direction=direction,
        prop_female=prop_f,
        prop_male=prop_m,
        ratio=ratio,
        odds_ratio=odds,
    )


def _test_table(table: DocFrequencyTable, alphas: list[float], critical: float):
    """Prefilter + chi-square + BH over one table.

    Returns (tested p-values as {term: (chi2, p)}, {term: level}).
    The BH family size m is the number of prefilter survivors.
    """
    n_f, n_m = table.n_female, table.n_male
    tested: dict[str, tuple[float, float]] = {}
    for term, (f, m) in table.counts.items():
        if passes_prefilter(f + m, n_f, n_m, critical):
            chi2 = chi2_cells(f, n_f - f, m, n_m - m)
            tested[term] = (chi2, chi2_sf(chi2))
    pvalues = [(term, p) for term, (_, p) in tested.items()]
    levels: dict[str, SignificanceLevel] = {}
    for rank, alpha in enumerate(alphas, start=1):  # alphas descending: 1..3 stars
        for term in bh_select(pvalues, alpha):
            level = SignificanceLevel(rank)
            if level > levels.get(term, SignificanceLevel.NONE):
                levels[term] = level
    return tested, levels


def analyze_overall(
    table: DocFrequencyTable,
    alphas=DEFAULT_ALPHAS,
    critical: float = CHI2_CRIT_P05,
) -> list[TermStats]:
    """Test every prefilter-surviving term over the whole corpus.

    Returns TermStats for the survivors, sorted by term.  Raises
    AnalysisError when either gender has zero posts.
    """
    if not table.testable:
        raise AnalysisError(
            f"cannot test: corpus has {table.n_female} female and {table.n_male} male posts"
        )
    alphas = _validate_alphas(alphas)
    tested, levels = _test_table(table, alphas, critical)
    out = []
    for term in sorted(tested):
        f, m = table.df(term)
        _chi2, p = tested[term]
        out.append(
            _term_stats(
                term, f, m, table.n_female, table.n_male,
                p, levels.get(term, SignificanceLevel.NONE),
            )
        )
    return out


def _group_posts_by_day(corpus: Corpus) -> list[list]:
    days = corpus.day_list()
    index_of = {d: i for i, d in enumerate(days)}
    groups: list[list] = [[] for _ in days]
    for post in corpus.posts:
        groups[index_of[post.day()]].append(post)
    return groups


def _daily_stars(
    day_tables: list[DocFrequencyTable],
    alphas: list[float],
    critical: float,
) -> dict[str, list[int]]:
    """Run the full test procedure independently per day; collect star rows."""
    n_days = len(day_tables)
    stars: dict[str, list[int]] = {}
    for day_idx, table in enumerate(day_tables):
        if not table.testable:
            continue  # a day missing a gender contributes 0 stars for all terms
        _, levels = _test_table(table, alphas, critical)
        for term, level in levels.items():
            row = stars.get(term)
            if row is None:
                row = stars[term] = [0] * n_days
            row[day_idx] = level.stars
    return stars


def analyze_daily(
    corpus: Corpus,
    alphas=DEFAULT_ALPHAS,
    star_threshold: int = DEFAULT_STAR_THRESHOLD,
    critical: float = CHI2_CRIT_P05,
    jobs: int = 1,
) -> dict[str, DailyStarRecord]:
    """Per-day testing with per-day BH family sizes.

    Returns DailyStarRecords for every term earning at least one star; the
    star arrays span every calendar day in the corpus range.
    """
    if not corpus.posts:
        raise AnalysisError("cannot run daily analysis on an empty corpus")
    alphas = _validate_alphas(alphas)
    day_tables = [build_table(g, jobs=jobs) for g in _group_posts_by_day(corpus)]
    rows = _daily_stars(day_tables, alphas, critical)
    return {term: DailyStarRecord(term, row) for term, row in sorted(rows.items())}


@dataclass
class AnalysisResult:
    """Everything the report, CLI exports, and web API serve."""

    config: dict
    date_range: tuple[date, date] | None
    counts: dict
    provenance: dict
    overall_terms: list[TermStats]
    daily: dict[str, DailyStarRecord]
    _by_term: dict[str, TermStats] = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self._by_term = {t.term: t for t in self.overall_terms}

    @property
    def n_days(self) -> int:
        if self.date_range is None:
            return 0
        return (self.date_range[1] - self.date_range[0]).days + 1

    def term_stats(self, term: str) -> TermStats | None:
        return self._by_term.get(term)

    def daily_record(self, term: str) -> DailyStarRecord:
        rec = self.daily.get(term)
        if rec is None:
            rec = DailyStarRecord(term, [0] * self.n_days)
        return rec

    def included_overall(self, term: str) -> bool:
        stats = self._by_term.get(term)
        return stats is not None and stats.level is not SignificanceLevel.NONE

    def included_daily(self, term: str) -> bool:
        return self.daily_record(term).star_total >= self.config["star_threshold"]

    @property
    def included_terms(self) -> set[str]:
        overall = {t.term for t in self.overall_terms if t.level is not SignificanceLevel.NONE}
        starred = {t for t in self.daily if self.included_daily(t)}
        return overall | starred

    # ── serialization ──────────────────────────────────────────────────

    def term_record(self, term: str) -> dict | None:
        """JSON-shaped record for one term, or None when unknown."""
        t = self._by_term.get(term)
        if t is None:
            return None
        rec = self.daily_record(term)
        included_overall = self.included_overall(term)
        included_daily = self.included_daily(term)
        return {
            "term": t.term,
            "df_female": t.df_female,
            "df_male": t.df_male,
            "chi2": t.chi2,
            "p": t.p,
            "level": t.level.label(),
            "direction": t.direction.value,
            "prop_female": t.prop_female,
            "prop_male": t.prop_male,
            "ratio": t.ratio,
            "odds_ratio": t.odds_ratio,
            "stars_by_day": list(rec.stars_by_day),
            "star_total": rec.star_total,
            "star_days": rec.days,
            "included_overall": included_overall,
            "included_daily": included_daily,
            "included": included_overall or included_daily,
        }

    def to_dict(self) -> dict:
        terms = [self.term_record(t.term) for t in self.overall_terms]
        rng = self.date_range
        return {
            "format": RESULT_FORMAT,
            "version": RESULT_VERSION,
            "config": self.config,
            "date_range": [rng[0].isoformat(), rng[1].isoformat()] if rng else None,
            "n_days": self.n_days,
            "counts": self.counts,
            "provenance": self.provenance,
            "terms": terms,
        }

    def to_json_bytes(self) -> bytes:
        doc = json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
        return (doc + "\n").encode("utf-8")

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_json_bytes())

    @classmethod
    def from_dict(cls, doc: dict) -> "AnalysisResult":
        if doc.get("format") != RESULT_FORMAT:
            raise ValueError("not an analysis result document (missing format tag)")
        if doc.get("version") != RESULT_VERSION:
            raise ValueError(f"unsupported analysis result version {doc.get('version')!r}")
        counts = doc["counts"]
        n_f, n_m = counts["female"], counts["male"]
        overall = []
        daily = {}
        for rec in doc["terms"]:
            overall.append(
                TermStats(
                    term=rec["term"],
                    df_female=rec["df_female"],
                    df_male=rec["df_male"],
                    n_female=n_f,
                    n_male=n_m,
                    chi2=rec["chi2"],
                    p=rec["p"],
                    level=SignificanceLevel.from_label(rec["level"]),
                    direction=Direction(rec["direction"]),
                    prop_female=rec["prop_female"],
                    prop_male=rec["prop_male"],
                    ratio=rec["ratio"],
                    odds_ratio=rec["odds_ratio"],
                )
            )
            if any(rec["stars_by_day"]):
                daily[rec["term"]] = DailyStarRecord(rec["term"], list(rec["stars_by_day"]))
        rng = doc.get("date_range")
        return cls(
            config=doc["config"],
            date_range=(date.fromisoformat(rng[0]), date.fromisoformat(rng[1])) if rng else None,
            counts=counts,
            provenance=doc.get("provenance", {}),
            overall_terms=overall,
            daily=daily,
        )

    @classmethod
    def load(cls, path: str | Path) -> "AnalysisResult":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def to_csv(self, path: str | Path) -> None:
        """Reported (included) terms with headline statistics."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["term", "direction", "chi2", "level", "stars_total", "prop_female", "prop_male", "odds_ratio"]
            )
            for term in sorted(self.included_terms):
                t = self._by_term.get(term)
                rec = self.daily_record(term)
                if t is None:
                    continue
                writer.writerow(
                    [
                        t.term,
                        t.direction.value,
                        repr(t.chi2),
                        t.level.label(),
                        rec.star_total,
                        repr(t.prop_female),
                        repr(t.prop_male),
                        "" if t.odds_ratio is None else repr(t.odds_ratio),
                    ]
                )


def analyze(
    corpus: Corpus,
    lexicon: NameLexicon | None = None,
    alphas=DEFAULT_ALPHAS,
    star_threshold: int = DEFAULT_STAR_THRESHOLD,
    critical: float = CHI2_CRIT_P05,
    jobs: int = 1,
) -> AnalysisResult:
    """Full pipeline: label genders, test overall and per day, assemble result.

    Tokenizes each day's posts exactly once: the overall table is the merge
    of the per-day tables.  Deterministic for a fixed corpus and config,
    independent of jobs.
    """
    alphas = _validate_alphas(alphas)
    if lexicon is not None:
        corpus = corpus.with_genders(lexicon)
    if not corpus.posts:
        raise AnalysisError("cannot analyze an empty corpus")

    day_tables = [build_table(g, jobs=jobs) for g in _group_posts_by_day(corpus)]
    overall_table = DocFrequencyTable()
    for t in day_tables:
        overall_table.merge(t)
    if not overall_table.testable:
        raise AnalysisError(
            f"cannot test: corpus has {overall_table.n_female} female and "
            f"{overall_table.n_male} male posts"
        )

    tested, levels = _test_table(overall_table, alphas, critical)
    star_rows = _daily_stars(day_tables, alphas, critical)

    # Result universe: overall survivors plus anything that earned a star.
    universe = sorted(set(tested) | set(star_rows))
    n_f, n_m = overall_table.n_female, overall_table.n_male
    overall_terms = []
    for term in universe:
        f, m = overall_table.df(term)
        p = tested[term][1] if term in tested else None
        overall_terms.append(
            _term_stats(term, f, m, n_f, n_m, p, levels.get(term, SignificanceLevel.NONE))
        )
    n_days = len(day_tables)
    daily = {
        term: DailyStarRecord(term, row) for term, row in sorted(star_rows.items())
    }

    gender_counts = corpus.gender_counts()
    config = {
        "alphas": list(alphas),
        "star_threshold": star_threshold,
        "prefilter_critical": critical,
        "gender_threshold": lexicon.threshold if lexicon is not None else None,
        "daily_family": "per-day",
        "n_terms_total": len(overall_table.counts),
        "n_terms_tested": len(tested),
    }
    return AnalysisResult(
        config=config,
        date_range=corpus.date_range,
        counts={
            "posts": len(corpus.posts),
            "female": gender_counts["female"],
            "male": gender_counts["male"],
            "unknown": gender_counts["unknown"],
        },
        provenance=dict(corpus.provenance),
        overall_terms=overall_terms,
        daily=daily,
    )


# ── exploration statistics ──────────────────────────────────────────────


def _gender_direction(index: CorpusIndex, word: str) -> Direction | None:
    df_f = df_m = 0
    for i in index.posts_with(word):
        g = index.post_gender[i]
        if g is GenderLabel.FEMALE:
            df_f += 1
        elif g is GenderLabel.MALE:
            df_m += 1
    n_f = sum(index.day_totals_female)
    n_m = sum(index.day_totals_male)
    if n_f == 0 or n_m == 0:
        return None
    return Direction.FEMALE if df_f / n_f >= df_m / n_m else Direction.MALE


def top_associations(
    term: str,
    corpus: Corpus,
    k: int = 20,
    index: CorpusIndex | None = None,
    min_df: int = DEFAULT_ASSOCIATION_MIN_DF,
) -> list[AssociationEntry]:
    """Words over-represented in posts containing the term, ranked by chi2.

    The 2x2 table per candidate word w is [posts with term containing w or
    not; posts without term containing w or not], over all posts regardless
    of gender.  Candidates need document frequency >= min_df inside the
    term-containing subcorpus.  Returns at most k entries; an absent term
    yields an empty list.
    """
    if index is None:
        index = CorpusIndex(corpus)
    with_term = index.posts_with(term)
    if not with_term:
        return []
    n_with = len(with_term)
    n_without = len(index.corpus.posts) - n_with
    subcorpus_df: Counter = Counter()
    for i in with_term:
        subcorpus_df.update(set(tokenize(index.corpus.posts[i].text)))
    scored = []
    for word, a in subcorpus_df.items():
        if word == term or a < min_df:
            continue
        c = index.document_frequency(word) - a
        # Over-represented inside the term subcorpus only.
        if n_without > 0 and a * n_without <= c * n_with:
            continue
        chi2 = chi2_cells(a, n_with - a, c, n_without - c)
        if chi2 > 0.0:
            scored.append((word, chi2))
    scored.sort(key=lambda wc: (-wc[1], wc[0]))
    return [
        AssociationEntry(word, chi2, _gender_direction(index, word))
        for word, chi2 in scored[:k]
    ]


def time_series(
    term: str,
    corpus: Corpus,
    index: CorpusIndex | None = None,
) -> list[dict]:
    """Per-day usage proportions split by gender.

    One entry per calendar day in the corpus range: {"day", "prop_female",
    "prop_male"}.  A day with zero posts of a gender reports None for that
    gender, never zero.
    """
    if index is None:
        index = CorpusIndex(corpus)
    n_days = len(index.days)
    with_f = [0] * n_days
    with_m = [0] * n_days
    for i in index.posts_with(term):
        g = index.post_gender[i]
        d = index.post_day[i]
        if g is GenderLabel.FEMALE:
            with_f[d] += 1
        elif g is GenderLabel.MALE:
            with_m[d] += 1
    out = []
    for d, day in enumerate(index.days):
        tot_f = index.day_totals_female[d]
        tot_m = index.day_totals_male[d]
        out.append(
            {
                "day": day.isoformat(),
                "prop_female": (with_f[d] / tot_f) if tot_f else None,
                "prop_male": (with_m[d] / tot_m) if tot_m else None,
            }
        )
    return out

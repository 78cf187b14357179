"""Tokenization and per-gender document-frequency counting.

Tokens are maximal runs of unicode letters/digits/underscore/apostrophe,
lowercased, keeping one leading '#' or '@' as part of the token (hashtags
and mentions are first-class analyzable terms).  Everything else separates.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
import re

from .gender import GenderLabel

TOKEN_RE = re.compile(r"[#@]?[\w']+")

_GENDER_COLUMN = {GenderLabel.FEMALE: 0, GenderLabel.MALE: 1}


def tokenize(text: str) -> list[str]:
    """Lowercased tokens of a post text.

    >>> tokenize("Practice #SocialDistancing now!")
    ['practice', '#socialdistancing', 'now']
    >>> tokenize("COVID-19")
    ['covid', '19']
    """
    return TOKEN_RE.findall(text.lower())


def tokenize_with_offsets(text: str) -> list[tuple[str, int, int]]:
    """Tokens plus their [start, end) character spans in the original text.

    Token surfaces equal tokenize(text); spans index the un-lowercased
    input so callers can highlight matches in place.
    """
    return [(m.group(0).lower(), m.start(), m.end()) for m in TOKEN_RE.finditer(text)]


@dataclass
class DocFrequencyTable:
    """Per-term document frequencies split by author gender.

    counts maps term -> [df_female, df_male]; a term occurring five times in
    one post still counts once.  Posts labeled Unknown contribute nothing.
    """

    counts: dict[str, list[int]] = field(default_factory=dict)
    n_female: int = 0
    n_male: int = 0

    @property
    def testable(self) -> bool:
        """False when a gender has zero posts; statistics are refused then."""
        return self.n_female > 0 and self.n_male > 0

    def df(self, term: str) -> tuple[int, int]:
        pair = self.counts.get(term)
        return (pair[0], pair[1]) if pair else (0, 0)

    def add_post(self, tokens, column: int) -> None:
        counts = self.counts
        for tok in set(tokens):
            pair = counts.get(tok)
            if pair is None:
                counts[tok] = [0, 0]
                pair = counts[tok]
            pair[column] += 1

    def merge(self, other: "DocFrequencyTable") -> None:
        """Fold another shard's counts into this table."""
        self.n_female += other.n_female
        self.n_male += other.n_male
        counts = self.counts
        for term, (f, m) in other.counts.items():
            pair = counts.get(term)
            if pair is None:
                counts[term] = [f, m]
            else:
                pair[0] += f
                pair[1] += m

    def to_csv(self, path: str | Path) -> None:
        """Dump `term,df_female,df_male` rows, sorted by term."""
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["term", "df_female", "df_male"])
            for term in sorted(self.counts):
                f, m = self.counts[term]
                writer.writerow([term, f, m])


def _count_chunk(chunk: list[tuple[str, int]]) -> tuple[dict[str, list[int]], int, int]:
    counts: dict[str, list[int]] = {}
    n_f = n_m = 0
    for text, column in chunk:
        if column == 0:
            n_f += 1
        else:
            n_m += 1
        for tok in set(TOKEN_RE.findall(text.lower())):
            pair = counts.get(tok)
            if pair is None:
                counts[tok] = [1, 0] if column == 0 else [0, 1]
            else:
                pair[column] += 1
    return counts, n_f, n_m


def build_table(corpus, jobs: int = 1) -> DocFrequencyTable:
    """Count per-gender document frequencies over a corpus.

    Accepts a Corpus or any iterable of posts carrying .text and .gender.
    Unknown-gender posts are excluded from both columns and both totals.
    With jobs > 1 the counting is sharded across processes and merged in a
    fixed shard order, so results are identical to the serial path.
    """
    posts = getattr(corpus, "posts", corpus)
    gendered = [
        (p.text, _GENDER_COLUMN[p.gender])
        for p in posts
        if p.gender in _GENDER_COLUMN
    ]
    table = DocFrequencyTable()
    if jobs > 1 and len(gendered) >= 2_000:
        n_chunks = jobs * 4
        size = max(1, (len(gendered) + n_chunks - 1) // n_chunks)
        chunks = [gendered[i : i + size] for i in range(0, len(gendered), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for counts, n_f, n_m in pool.map(_count_chunk, chunks):
                shard = DocFrequencyTable(counts=counts, n_female=n_f, n_male=n_m)
                table.merge(shard)
    else:
        counts, n_f, n_m = _count_chunk(gendered)
        table.counts = counts
        table.n_female = n_f
        table.n_male = n_m
    return table


class CorpusIndex:
    """Inverted index over a corpus for KWIC, association, and series queries.

    Holds term -> sorted post indices over *all* posts (any gender), plus
    per-post day/gender metadata and per-day gendered post totals.
    """

    def __init__(self, corpus):
        self.corpus = corpus
        self.days = corpus.day_list()
        day_of = {d: i for i, d in enumerate(self.days)}
        n_days = len(self.days)
        self.postings: dict[str, list[int]] = {}
        self.post_day: list[int] = []
        self.post_gender: list[GenderLabel] = []
        self.day_totals_female = [0] * n_days
        self.day_totals_male = [0] * n_days
        postings = self.postings
        for i, post in enumerate(corpus.posts):
            day = day_of[post.timestamp.date()]
            self.post_day.append(day)
            self.post_gender.append(post.gender)
            if post.gender is GenderLabel.FEMALE:
                self.day_totals_female[day] += 1
            elif post.gender is GenderLabel.MALE:
                self.day_totals_male[day] += 1
            for tok in set(TOKEN_RE.findall(post.text.lower())):
                lst = postings.get(tok)
                if lst is None:
                    postings[tok] = [i]
                else:
                    lst.append(i)

    def __contains__(self, term: str) -> bool:
        return term in self.postings

    def posts_with(self, term: str) -> list[int]:
        return self.postings.get(term, [])

    def document_frequency(self, term: str) -> int:
        return len(self.postings.get(term, ()))

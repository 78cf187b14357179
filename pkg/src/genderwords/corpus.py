"""Corpus loading, query filtering, near-duplicate removal, and persistence.

Input records arrive as newline-delimited JSON (fields id, created_at,
display_name, text) or CSV with the same headers.  A finished Corpus is
immutable by convention and safe to share across readers.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from typing import Iterable, Iterator

from .gender import GenderLabel, NameLexicon
from .text import tokenize

CORPUS_FORMAT = "genderwords-corpus"
CORPUS_VERSION = 1


@dataclass(frozen=True, slots=True)
class Post:
    id: str
    timestamp: datetime  # tz-aware UTC, second precision
    display_name: str
    text: str
    gender: GenderLabel = GenderLabel.UNKNOWN

    def day(self) -> date:
        return self.timestamp.date()


def parse_timestamp(raw: str) -> datetime:
    """Parse an ISO-8601 timestamp to tz-aware UTC at second precision.

    Naive inputs are taken as UTC; offsets are converted.
    """
    if not isinstance(raw, str) or not raw.strip():
        raise ValueError(f"unparseable timestamp: {raw!r}")
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def format_timestamp(dt: datetime) -> str:
    return dt.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def dedup_key(text: str) -> str:
    """Normalized fingerprint under which near-duplicates collide.

    Lowercases, drops every whitespace token starting with '@' or '#',
    drops one leading "rt" token (retweets count as duplicates), and
    collapses whitespace.

    >>> dedup_key("RT @bob: Wash your hands #covid19")
    'wash your hands'
    """
    tokens = [t for t in text.lower().split() if not t.startswith(("@", "#"))]
    if tokens and tokens[0] == "rt":
        tokens = tokens[1:]
    return " ".join(tokens)


class QuerySet:
    """Query entries: single words or quoted multi-word phrases.

    Matching is case-insensitive and token-level; a phrase matches only as a
    contiguous token sequence.  Entries are tokenized with the same rules as
    post texts, so "COVID-19" matches the token pair ("covid", "19").
    """

    def __init__(self, entries: Iterable[str]):
        self.entries: list[str] = []
        self._words: set[str] = set()
        self._phrases: list[tuple[str, ...]] = []
        for raw in entries:
            entry = raw.strip().strip('"').strip("'").strip()
            if not entry:
                continue
            tokens = tuple(tokenize(entry))
            if not tokens:
                continue
            self.entries.append(entry)
            if len(tokens) == 1:
                self._words.add(tokens[0])
            else:
                self._phrases.append(tokens)
        if not self.entries:
            raise ValueError("query set must contain at least one non-empty entry")

    @classmethod
    def from_file(cls, path: str | Path) -> "QuerySet":
        """One query per line; blank lines and #-comment lines ignored."""
        lines = []
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                lines.append(stripped)
        return cls(lines)

    def matches(self, tokens: list[str]) -> bool:
        if self._words and not self._words.isdisjoint(tokens):
            return True
        for phrase in self._phrases:
            first = phrase[0]
            span = len(phrase)
            for i, tok in enumerate(tokens):
                if tok == first and tuple(tokens[i : i + span]) == phrase:
                    return True
        return False


@dataclass
class Corpus:
    """Posts sorted by ascending timestamp plus ingestion provenance."""

    posts: list[Post] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.posts)

    @property
    def date_range(self) -> tuple[date, date] | None:
        if not self.posts:
            return None
        return (self.posts[0].day(), self.posts[-1].day())

    def day_list(self) -> list[date]:
        """Every UTC calendar day in the corpus range, inclusive."""
        rng = self.date_range
        if rng is None:
            return []
        first, last = rng
        return [first + timedelta(days=i) for i in range((last - first).days + 1)]

    def with_genders(self, lexicon: NameLexicon) -> "Corpus":
        """New corpus with every post labeled via the lexicon."""
        labeled = [replace(p, gender=lexicon.classify(p.display_name)) for p in self.posts]
        return Corpus(posts=labeled, provenance=dict(self.provenance))

    def gender_counts(self) -> dict[str, int]:
        out = {"female": 0, "male": 0, "unknown": 0}
        for p in self.posts:
            out[p.gender.value] += 1
        return out

    # ── persistence ────────────────────────────────────────────────────

    def save(self, path: str | Path) -> None:
        """Write the versioned JSONL cache (header line, then one post per line)."""
        rng = self.date_range
        header = {
            "format": CORPUS_FORMAT,
            "version": CORPUS_VERSION,
            "posts": len(self.posts),
            "date_range": [rng[0].isoformat(), rng[1].isoformat()] if rng else None,
            "provenance": self.provenance,
        }
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(header, sort_keys=True, ensure_ascii=False) + "\n")
            for p in self.posts:
                rec = {
                    "id": p.id,
                    "created_at": format_timestamp(p.timestamp),
                    "display_name": p.display_name,
                    "text": p.text,
                }
                if p.gender is not GenderLabel.UNKNOWN:
                    rec["gender"] = p.gender.value
                fh.write(json.dumps(rec, sort_keys=True, ensure_ascii=False) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Corpus":
        with open(path, encoding="utf-8") as fh:
            first = fh.readline()
            if not first.strip():
                raise ValueError(f"{path}: empty corpus file")
            header = json.loads(first)
            if header.get("format") != CORPUS_FORMAT:
                raise ValueError(f"{path}: not a corpus cache (missing format tag)")
            if header.get("version") != CORPUS_VERSION:
                raise ValueError(f"{path}: unsupported corpus version {header.get('version')!r}")
            posts = []
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                posts.append(
                    Post(
                        id=rec["id"],
                        timestamp=parse_timestamp(rec["created_at"]),
                        display_name=rec["display_name"],
                        text=rec["text"],
                        gender=GenderLabel(rec.get("gender", "unknown")),
                    )
                )
        return cls(posts=posts, provenance=header.get("provenance", {}))


def iter_records(path: str | Path) -> Iterator[dict | None]:
    """Yield raw record dicts from a JSONL or CSV file; None for bad rows.

    CSV is detected by extension (.csv) and must carry a header row with
    id, created_at, display_name, text columns.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        with open(path, newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                yield row
    else:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    yield None
                    continue
                yield rec if isinstance(rec, dict) else None


REQUIRED_FIELDS = ("id", "created_at", "display_name", "text")


def ingest(records: Iterable[dict | None], queries: QuerySet, source: str = "") -> Corpus:
    """Filter a record stream by query match, then deduplicate.

    Records are matched against the query set first; survivors are
    deduplicated on dedup_key, keeping the earliest-timestamped instance.
    Malformed records (missing fields, unparseable timestamps) are skipped
    and counted, never fatal.  An empty result is a valid empty corpus.
    """
    malformed = 0
    unmatched = 0
    duplicate_ids = 0
    candidates: list[Post] = []
    seen_ids: set[str] = set()
    for rec in records:
        if rec is None:
            malformed += 1
            continue
        try:
            rec_id = str(rec["id"]).strip()
            if not rec_id:
                raise ValueError("empty id")
            ts = parse_timestamp(rec["created_at"])
            display_name = rec["display_name"]
            text = rec["text"]
            if display_name is None or text is None:
                raise ValueError("missing field")
        except (KeyError, ValueError, TypeError):
            malformed += 1
            continue
        if not queries.matches(tokenize(text)):
            unmatched += 1
            continue
        if rec_id in seen_ids:
            duplicate_ids += 1
            continue
        seen_ids.add(rec_id)
        candidates.append(Post(id=rec_id, timestamp=ts, display_name=str(display_name), text=str(text)))

    # Earliest instance survives: stable sort keeps input order on timestamp ties.
    candidates.sort(key=lambda p: p.timestamp)
    kept: dict[str, Post] = {}
    exact_duplicates = 0
    near_duplicates = 0
    for post in candidates:
        key = dedup_key(post.text)
        first = kept.get(key)
        if first is None:
            kept[key] = post
        elif post.text == first.text:
            exact_duplicates += 1
        else:
            near_duplicates += 1

    posts = sorted(kept.values(), key=lambda p: p.timestamp)
    provenance = {
        "source": source,
        "queries": list(queries.entries),
        "records_read": malformed + unmatched + duplicate_ids + len(candidates),
        "malformed_skipped": malformed,
        "unmatched": unmatched,
        "duplicate_ids": duplicate_ids,
        "exact_duplicates": exact_duplicates,
        "near_duplicates": near_duplicates,
    }
    return Corpus(posts=posts, provenance=provenance)


def ingest_file(path: str | Path, queries: QuerySet) -> Corpus:
    return ingest(iter_records(path), queries, source=str(path))

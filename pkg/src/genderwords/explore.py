"""Analyst exploration: KWIC sampling and persisted theme annotations."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .analysis import AnalysisResult
from .corpus import Corpus, format_timestamp
from .text import CorpusIndex, tokenize_with_offsets

THEMES_FORMAT = "genderwords-themes"
THEMES_VERSION = 1

GENDER_TENDENCIES = ("female", "male", "mixed")


@dataclass
class KwicEntry:
    post_id: str
    text: str
    spans: list[tuple[int, int]]  # [start, end) character offsets of matches
    timestamp: str
    gender: str


@dataclass
class KwicSample:
    term: str
    entries: list[KwicEntry]
    seed: int
    n_requested: int
    n_returned: int

    def to_dict(self) -> dict:
        return {
            "term": self.term,
            "seed": self.seed,
            "n_requested": self.n_requested,
            "n_returned": self.n_returned,
            "entries": [
                {
                    "post_id": e.post_id,
                    "text": e.text,
                    "spans": [list(s) for s in e.spans],
                    "timestamp": e.timestamp,
                    "gender": e.gender,
                }
                for e in self.entries
            ],
        }


def kwic(
    term: str,
    corpus: Corpus,
    n: int = 10,
    seed: int = 0,
    index: CorpusIndex | None = None,
) -> KwicSample:
    """Uniform random sample (without replacement) of posts containing a term.

    Deterministic for a fixed seed.  A term matching fewer than n posts
    returns them all; an absent term returns an empty sample, not an error.
    """
    if n < 0:
        raise ValueError("sample size must be >= 0")
    if index is None:
        index = CorpusIndex(corpus)
    qualifying = index.posts_with(term)
    chosen = random.Random(seed).sample(qualifying, min(n, len(qualifying)))
    entries = []
    for i in chosen:
        post = index.corpus.posts[i]
        spans = [(s, e) for tok, s, e in tokenize_with_offsets(post.text) if tok == term]
        entries.append(
            KwicEntry(
                post_id=post.id,
                text=post.text,
                spans=spans,
                timestamp=format_timestamp(post.timestamp),
                gender=post.gender.value,
            )
        )
    return KwicSample(
        term=term,
        entries=entries,
        seed=seed,
        n_requested=n,
        n_returned=len(entries),
    )


def format_kwic(sample: KwicSample) -> str:
    """Plain-text rendering with every match bracketed."""
    lines = []
    for e in sample.entries:
        text = e.text
        for start, end in sorted(e.spans, reverse=True):
            text = f"{text[:start]}[{text[start:end]}]{text[end:]}"
        lines.append(f"{e.timestamp}  {e.gender:<7}  {text}")
    return "\n".join(lines)


class ThemeError(ValueError):
    """Invalid theme operation: unknown theme/term or duplicate name."""


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class Theme:
    id: str
    name: str
    gender_tendency: str = "mixed"
    terms: list[str] = field(default_factory=list)
    notes: str = ""
    created: str = field(default_factory=_now)
    modified: str = field(default_factory=_now)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "gender_tendency": self.gender_tendency,
            "terms": sorted(self.terms),
            "notes": self.notes,
            "created": self.created,
            "modified": self.modified,
        }


class ThemeStore:
    """Named groups of terms with single membership, persisted as one JSON file.

    The store is keyed by the content hash of the analysis it annotates, so
    stale annotations never silently attach to a different corpus.  Mutations
    are expected to be serialized by the caller (the server holds a lock).
    """

    def __init__(self, analysis_hash: str = "", themes: list[Theme] | None = None, next_id: int = 1):
        self.analysis_hash = analysis_hash
        self.themes: dict[str, Theme] = {}
        self._next_id = next_id
        for theme in themes or []:
            self.themes[theme.id] = theme

    # ── queries ──────────────────────────────────────────────────────────

    def get(self, theme_id: str) -> Theme:
        theme = self.themes.get(theme_id)
        if theme is None:
            raise ThemeError(f"unknown theme id: {theme_id!r}")
        return theme

    def theme_of(self, term: str) -> Theme | None:
        for theme in self.themes.values():
            if term in theme.terms:
                return theme
        return None

    def list_themes(self) -> list[Theme]:
        return sorted(self.themes.values(), key=lambda t: t.id)

    # ── mutations ────────────────────────────────────────────────────────

    def create(self, name: str, gender_tendency: str = "mixed", notes: str = "") -> Theme:
        name = name.strip()
        if not name:
            raise ThemeError("theme name must be non-empty")
        if gender_tendency not in GENDER_TENDENCIES:
            raise ThemeError(f"gender_tendency must be one of {GENDER_TENDENCIES}")
        if any(t.name == name for t in self.themes.values()):
            raise ThemeError(f"theme name already exists: {name!r}")
        theme = Theme(id=f"th{self._next_id:04d}", name=name, gender_tendency=gender_tendency, notes=notes)
        self._next_id += 1
        self.themes[theme.id] = theme
        return theme

    def update(self, theme_id: str, name=None, gender_tendency=None, notes=None) -> Theme:
        theme = self.get(theme_id)
        if name is not None:
            name = name.strip()
            if not name:
                raise ThemeError("theme name must be non-empty")
            if any(t.name == name and t.id != theme_id for t in self.themes.values()):
                raise ThemeError(f"theme name already exists: {name!r}")
            theme.name = name
        if gender_tendency is not None:
            if gender_tendency not in GENDER_TENDENCIES:
                raise ThemeError(f"gender_tendency must be one of {GENDER_TENDENCIES}")
            theme.gender_tendency = gender_tendency
        if notes is not None:
            theme.notes = notes
        theme.modified = _now()
        return theme

    def delete(self, theme_id: str) -> None:
        """Remove a theme; its terms become unassigned (terms are never deleted)."""
        self.get(theme_id)
        del self.themes[theme_id]

    def assign(self, theme_id: str, terms, known_terms) -> Theme:
        """Assign terms to a theme, moving them out of any previous theme.

        Every term must exist in the current analysis (known_terms); an
        unknown term aborts the whole assignment, naming the offender.
        """
        theme = self.get(theme_id)
        terms = list(terms)
        for term in terms:
            if term not in known_terms:
                raise ThemeError(f"unknown term: {term!r}")
        for other in self.themes.values():
            if other.id != theme_id:
                kept = [t for t in other.terms if t not in terms]
                if len(kept) != len(other.terms):
                    other.terms = kept
                    other.modified = _now()
        merged = set(theme.terms) | set(terms)
        theme.terms = sorted(merged)
        theme.modified = _now()
        return theme

    def unassign(self, terms) -> None:
        """Detach terms from whatever theme holds them."""
        drop = set(terms)
        for theme in self.themes.values():
            kept = [t for t in theme.terms if t not in drop]
            if len(kept) != len(theme.terms):
                theme.terms = kept
                theme.modified = _now()

    # ── persistence ──────────────────────────────────────────────────────

    def to_dict(self) -> dict:
        return {
            "format": THEMES_FORMAT,
            "version": THEMES_VERSION,
            "analysis_hash": self.analysis_hash,
            "next_id": self._next_id,
            "themes": [t.to_dict() for t in self.list_themes()],
        }

    def to_json_bytes(self) -> bytes:
        doc = json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))
        return (doc + "\n").encode("utf-8")

    def save(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_json_bytes())

    @classmethod
    def load(cls, path: str | Path) -> "ThemeStore":
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        if doc.get("format") != THEMES_FORMAT:
            raise ValueError(f"{path}: not a theme store file")
        if doc.get("version") != THEMES_VERSION:
            raise ValueError(f"{path}: unsupported theme store version {doc.get('version')!r}")
        themes = [
            Theme(
                id=t["id"],
                name=t["name"],
                gender_tendency=t["gender_tendency"],
                terms=list(t["terms"]),
                notes=t.get("notes", ""),
                created=t["created"],
                modified=t["modified"],
            )
            for t in doc.get("themes", [])
        ]
        return cls(analysis_hash=doc.get("analysis_hash", ""), themes=themes, next_id=doc.get("next_id", 1))

    # ── reporting ────────────────────────────────────────────────────────

    def export_report(self, result: AnalysisResult) -> dict:
        """Grouped report: theme -> terms -> statistics, plus unassigned terms."""
        themed_terms: set[str] = set()
        groups = []
        for theme in sorted(self.themes.values(), key=lambda t: t.name):
            records = [result.term_record(t) for t in sorted(theme.terms)]
            themed_terms.update(theme.terms)
            groups.append(
                {
                    "id": theme.id,
                    "name": theme.name,
                    "gender_tendency": theme.gender_tendency,
                    "notes": theme.notes,
                    "terms": [r for r in records if r is not None],
                }
            )
        unassigned = [
            result.term_record(t)
            for t in sorted(result.included_terms - themed_terms)
        ]
        return {
            "analysis_hash": self.analysis_hash,
            "themes": groups,
            "unassigned": [r for r in unassigned if r is not None],
        }

    def export_report_csv(self, result: AnalysisResult) -> str:
        """CSV flattening of the grouped report."""
        import csv
        import io

        report = self.export_report(result)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["theme", "gender_tendency", "term", "direction", "chi2", "level", "star_total"])
        for group in report["themes"]:
            for rec in group["terms"]:
                writer.writerow(
                    [group["name"], group["gender_tendency"], rec["term"],
                     rec["direction"], repr(rec["chi2"]), rec["level"], rec["star_total"]]
                )
        for rec in report["unassigned"]:
            writer.writerow(
                ["", "", rec["term"], rec["direction"], repr(rec["chi2"]), rec["level"], rec["star_total"]]
            )
        return buf.getvalue()

"""Seeded synthetic corpus generation with planted gendered terms.

Ground truth for the acceptance pipeline: every vocabulary term carries a
per-gender document probability, posts get gendered display names from the
built-in fixture lexicon, and generation is fully deterministic per seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path

import numpy as np

from .corpus import Corpus, Post
from .gender import GenderLabel, NameLexicon

SURNAMES = [
    "Smith", "Johnson", "Brown", "Garcia", "Miller", "Davis", "Wilson",
    "Moore", "Clark", "Lewis", "Walker", "Hall", "Young", "King", "Wright",
    "Lopez", "Hill", "Green", "Baker", "Nelson",
]

# Handle fragments that never resolve to a lexicon first name.
OBSCURE_WORDS = [
    "Star", "Cloud", "Pixel", "Turbo", "Falcon", "Shadow", "Cosmic", "Ninja",
    "Pepper", "Gadget", "Rocket", "Lunar", "Crimson", "Echo", "Velvet",
    "Quantum", "Breeze", "Zephyr", "Maple", "Orbit",
]


@dataclass(frozen=True)
class TermSpec:
    term: str
    p_female: float
    p_male: float

    def __post_init__(self):
        for label, p in (("p_female", self.p_female), ("p_male", self.p_male)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"term {self.term!r}: {label}={p!r} outside [0, 1]")


@dataclass(frozen=True)
class SynthSpec:
    """Vocabulary design for a synthetic corpus.

    planted terms carry distinct female/male document probabilities;
    background terms are the null vocabulary (usually equal probabilities).
    """

    planted: tuple[TermSpec, ...]
    background: tuple[TermSpec, ...]
    start_date: str = "2020-03-10"
    n_days: int = 14
    female_share: float = 0.5
    unknown_share: float = 0.0

    def __post_init__(self):
        if self.n_days < 1:
            raise ValueError("n_days must be >= 1")
        for label, p in (("female_share", self.female_share), ("unknown_share", self.unknown_share)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{label}={p!r} outside [0, 1]")
        names = [t.term for t in self.planted] + [t.term for t in self.background]
        if len(set(names)) != len(names):
            raise ValueError("planted and background term names must be unique")

    @property
    def all_terms(self) -> tuple[TermSpec, ...]:
        return self.planted + self.background

    @classmethod
    def from_dict(cls, raw: dict) -> "SynthSpec":
        def expand(section, default_prefix) -> tuple[TermSpec, ...]:
            if section is None:
                return ()
            if isinstance(section, dict):
                count = int(section["count"])
                prefix = section.get("prefix", default_prefix)
                p_f = float(section.get("p_female", section.get("doc_prob", 0.0)))
                p_m = float(section.get("p_male", section.get("doc_prob", 0.0)))
                width = max(4, len(str(max(count - 1, 0))))
                return tuple(TermSpec(f"{prefix}{i:0{width}d}", p_f, p_m) for i in range(count))
            return tuple(TermSpec(e["term"], float(e["p_female"]), float(e["p_male"])) for e in section)

        return cls(
            planted=expand(raw.get("planted"), "planted"),
            background=expand(raw.get("background"), "w"),
            start_date=raw.get("start_date", "2020-03-10"),
            n_days=int(raw.get("n_days", 14)),
            female_share=float(raw.get("female_share", 0.5)),
            unknown_share=float(raw.get("unknown_share", 0.0)),
        )

    @classmethod
    def from_json(cls, path: str | Path) -> "SynthSpec":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _display_name(rand: int, pool: list[str]) -> str:
    variant = rand & 3
    first = pool[(rand >> 8) % len(pool)].capitalize()
    surname = SURNAMES[(rand >> 16) % len(SURNAMES)]
    if variant == 0:
        return f"{first} {surname}"
    if variant == 1:
        return f"{first}{surname}"
    if variant == 2:
        return f"{first}{(rand >> 16) % 10000}"
    return f"{first} {surname[0]}."


def _obscure_name(rand: int) -> str:
    a = OBSCURE_WORDS[(rand >> 8) % len(OBSCURE_WORDS)]
    b = OBSCURE_WORDS[(rand >> 16) % len(OBSCURE_WORDS)]
    return f"{a}{b}{(rand >> 4) % 100000}"


def synth(spec: SynthSpec, n_posts: int, seed: int) -> Corpus:
    """Generate a deterministic corpus of n_posts from a vocabulary spec.

    Each post draws a true author gender (female_share), then every term is
    included independently with its per-gender document probability, so the
    empirical per-gender document frequencies are exactly binomial around
    the spec.  Display names come from the fixture lexicon (or an obscure
    handle for the unknown_share fraction).  Gender labels are left Unknown:
    the analysis pipeline infers them from the display names.
    """
    if n_posts < 0:
        raise ValueError("n_posts must be >= 0")
    rng = np.random.default_rng(seed)
    lexicon = NameLexicon.fixture()
    female_pool = lexicon.names_with_label(GenderLabel.FEMALE)
    male_pool = lexicon.names_with_label(GenderLabel.MALE)

    if n_posts == 0:
        return Corpus(posts=[], provenance=_provenance(spec, n_posts, seed))

    female_mask = rng.random(n_posts) < spec.female_share
    obscure_mask = rng.random(n_posts) < spec.unknown_share
    name_rand = rng.integers(0, 2**31, size=n_posts)
    second_offsets = rng.integers(0, spec.n_days * 86_400, size=n_posts)

    idx_female = np.nonzero(female_mask)[0]
    idx_male = np.nonzero(~female_mask)[0]

    incidence_posts: list[np.ndarray] = []
    incidence_terms: list[np.ndarray] = []
    for tid, term in enumerate(spec.all_terms):
        for idx, p in ((idx_female, term.p_female), (idx_male, term.p_male)):
            if p <= 0.0 or len(idx) == 0:
                continue
            if p >= 1.0:
                sel = idx
            else:
                sel = idx[rng.random(len(idx)) < p]
            if len(sel):
                incidence_posts.append(sel.astype(np.int64))
                incidence_terms.append(np.full(len(sel), tid, dtype=np.int64))

    texts = [""] * n_posts
    if incidence_posts:
        flat_posts = np.concatenate(incidence_posts)
        flat_terms = np.concatenate(incidence_terms)
        order = np.argsort(flat_posts, kind="stable")
        flat_posts = flat_posts[order]
        flat_terms = flat_terms[order].tolist()
        starts = np.searchsorted(flat_posts, np.arange(n_posts), side="left")
        ends = np.searchsorted(flat_posts, np.arange(n_posts), side="right")
        term_names = [t.term for t in spec.all_terms]
        for i, (s, e) in enumerate(zip(starts.tolist(), ends.tolist())):
            if s != e:
                texts[i] = " ".join(term_names[t] for t in flat_terms[s:e])

    start = datetime.fromisoformat(spec.start_date).replace(tzinfo=timezone.utc)
    stamped = sorted(
        range(n_posts), key=lambda i: (int(second_offsets[i]), i)
    )
    posts = []
    for serial, i in enumerate(stamped):
        if obscure_mask[i]:
            name = _obscure_name(int(name_rand[i]))
        else:
            pool = female_pool if female_mask[i] else male_pool
            name = _display_name(int(name_rand[i]), pool)
        posts.append(
            Post(
                id=f"synth-{serial:07d}",
                timestamp=start + timedelta(seconds=int(second_offsets[i])),
                display_name=name,
                text=texts[i],
            )
        )
    return Corpus(posts=posts, provenance=_provenance(spec, n_posts, seed))


def _provenance(spec: SynthSpec, n_posts: int, seed: int) -> dict:
    return {
        "source": "synth",
        "seed": seed,
        "n_posts": n_posts,
        "n_days": spec.n_days,
        "start_date": spec.start_date,
        "planted_terms": [t.term for t in spec.planted],
        "background_terms": len(spec.background),
        "female_share": spec.female_share,
        "unknown_share": spec.unknown_share,
    }

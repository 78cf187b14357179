"""Author gender inference from display names.

A display name is reduced to its leading first-name token, which is then
looked up in a count-based first-name lexicon.  The label is Female or Male
only when the lexicon proportion for that name reaches the confidence
threshold (default 0.90); everything else is Unknown.
"""

from __future__ import annotations

import csv
import enum
import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path


class GenderLabel(str, enum.Enum):
    FEMALE = "female"
    MALE = "male"
    UNKNOWN = "unknown"


def first_token(display_name: str) -> str:
    """Leading first-name candidate of a display name.

    Takes the maximal leading run of letters, additionally cut at the first
    lowercase-to-uppercase transition (camel case).  Returns "" when the
    name does not start with a letter.

    >>> first_token("AlexJohnson")
    'Alex'
    >>> first_token("GamerPro2020")
    'Gamer'
    >>> first_token("938624fan")
    ''
    """
    out = []
    prev_lower = False
    for ch in display_name:
        if not ch.isalpha():
            break
        if prev_lower and ch.isupper():
            break
        out.append(ch)
        prev_lower = ch.islower()
    return "".join(out)


@dataclass(frozen=True)
class NameLexicon:
    """First-name -> (female_count, male_count) table with a decision threshold.

    Lookups are case-insensitive.  A name classifies as Female when
    female_count / (female_count + male_count) >= threshold, symmetrically
    for Male, and Unknown otherwise.
    """

    entries: dict[str, tuple[int, int]]
    threshold: float = 0.90
    _normalized: dict[str, tuple[int, int]] = field(init=False, repr=False)

    def __post_init__(self):
        if not 0.5 < self.threshold <= 1.0:
            raise ValueError(f"threshold must be in (0.5, 1], got {self.threshold!r}")
        normalized = {}
        for name, (f, m) in self.entries.items():
            if f < 0 or m < 0 or f + m == 0:
                raise ValueError(f"lexicon entry {name!r} needs non-negative counts with a positive total")
            normalized[name.lower()] = (f, m)
        object.__setattr__(self, "_normalized", normalized)

    def __len__(self) -> int:
        return len(self._normalized)

    def label_name(self, name: str) -> GenderLabel:
        """Classify a bare first name (no display-name splitting)."""
        counts = self._normalized.get(name.lower())
        if counts is None:
            return GenderLabel.UNKNOWN
        f, m = counts
        total = f + m
        if f / total >= self.threshold:
            return GenderLabel.FEMALE
        if m / total >= self.threshold:
            return GenderLabel.MALE
        return GenderLabel.UNKNOWN

    def classify(self, display_name: str) -> GenderLabel:
        """Classify a full display name via its leading first-name token."""
        token = first_token(display_name)
        if not token:
            return GenderLabel.UNKNOWN
        return self.label_name(token)

    def names_with_label(self, label: GenderLabel) -> list[str]:
        """All lexicon names carrying the given label, sorted."""
        return sorted(n for n in self._normalized if self.label_name(n) is label)

    @classmethod
    def from_csv(cls, path: str | Path, threshold: float = 0.90) -> "NameLexicon":
        """Load a `name,female_count,male_count` CSV (header row optional)."""
        entries: dict[str, tuple[int, int]] = {}
        with open(path, newline="", encoding="utf-8") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != 3:
                    raise ValueError(f"{path}:{lineno}: expected 3 columns, got {len(row)}")
                name, f_raw, m_raw = (cell.strip() for cell in row)
                if lineno == 1 and not (f_raw.isdigit() and m_raw.isdigit()):
                    continue  # header row
                try:
                    entries[name] = (int(f_raw), int(m_raw))
                except ValueError as exc:
                    raise ValueError(f"{path}:{lineno}: counts must be integers: {row!r}") from exc
        if not entries:
            raise ValueError(f"{path}: lexicon file contains no entries")
        return cls(entries=entries, threshold=threshold)

    @classmethod
    def fixture(cls, threshold: float = 0.90) -> "NameLexicon":
        """Small built-in lexicon shipped for tests and the synthetic generator."""
        ref = importlib.resources.files("genderwords").joinpath("data/fixture_names.csv")
        with importlib.resources.as_file(ref) as path:
            return cls.from_csv(path, threshold=threshold)


def classify(display_name: str, lexicon: NameLexicon) -> GenderLabel:
    """Module-level convenience wrapper around NameLexicon.classify."""
    return lexicon.classify(display_name)

"""Contingency-table statistics: 2x2 chi-square, 1-df tail probability,
rarity prefilter, and Benjamini-Hochberg selection.

All functions are pure and safe to call from worker threads/processes.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

# Critical value of the chi-square(1 df) statistic at p=0.05, used by the
# rarity prefilter.  Deliberately the rounded-down textbook value: it is
# slightly below the exact quantile (3.84145882...), so the prefilter can
# only keep extra terms, never drop a potentially significant one.
CHI2_CRIT_P05 = 3.841

DEFAULT_ALPHAS = (0.05, 0.01, 0.001)


class SignificanceLevel(enum.IntEnum):
    """Highest corrected significance level a term passed.

    Integer values double as the per-day star weights.
    """

    NONE = 0
    P05 = 1
    P01 = 2
    P001 = 3

    @property
    def stars(self) -> int:
        return int(self)

    def label(self) -> str:
        return {0: "none", 1: "p05", 2: "p01", 3: "p001"}[int(self)]

    @classmethod
    def from_label(cls, label: str) -> "SignificanceLevel":
        table = {"none": cls.NONE, "p05": cls.P05, "p01": cls.P01, "p001": cls.P001}
        return table[label]




@dataclass(frozen=True)
class ContingencyCounts:
    """2x2 table: female posts with/without a term, male posts with/without.

    a = female with term, b = female without, c = male with, d = male without.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if v < 0 or v != int(v):
                raise ValueError(f"contingency cell {name} must be a non-negative integer, got {v!r}")
        if self.a + self.b + self.c + self.d == 0:
            raise ValueError("contingency table is empty (N = 0)")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d


def chi_square(counts: ContingencyCounts) -> float:
    """Pearson chi-square statistic for a 2x2 table, without continuity
    correction.

    Returns 0.0 when any marginal is zero (the rows are then trivially
    proportional).  Arithmetic is done in exact integers before the final
    division, so counts up to 10**7 cannot overflow or lose precision.
    """
    a, b, c, d = counts.a, counts.b, counts.c, counts.d
    row_f = a + b
    row_m = c + d
    col_with = a + c
    col_without = b + d
    if row_f == 0 or row_m == 0 or col_with == 0 or col_without == 0:
        return 0.0
    n = row_f + row_m
    diff = a * d - b * c
    return n * diff * diff / (row_f * row_m * col_with * col_without)


def chi2_cells(a: int, b: int, c: int, d: int) -> float:
    """chi_square over raw cells, skipping dataclass construction.

    Hot-path variant used by the per-term loops; identical arithmetic.
    """
    row_f = a + b
    row_m = c + d
    col_with = a + c
    col_without = b + d
    if row_f == 0 or row_m == 0 or col_with == 0 or col_without == 0:
        return 0.0
    n = row_f + row_m
    diff = a * d - b * c
    return n * diff * diff / (row_f * row_m * col_with * col_without)


def chi2_sf(x: float) -> float:
    """Survival function P(X >= x) for a chi-square variable with 1 df.

    Computed as erfc(sqrt(x/2)); absolute error is far below the 1e-8
    contract for all representable x.
    """
    if x < 0:
        raise ValueError(f"chi-square statistic cannot be negative: {x!r}")
    return math.erfc(math.sqrt(x / 2.0))


def max_possible_chi2(t: int, n_female: int, n_male: int) -> float:
    """Largest chi-square attainable by a term appearing in t posts total.

    The maximum over allocations of t occurrences between the genders is at
    one of the two extremes: as female-heavy as possible or as male-heavy as
    possible.  A term is too rare to ever test when this bound is below
    CHI2_CRIT_P05.
    """
    if t < 0 or t > n_female + n_male:
        raise ValueError(f"term count t={t} outside [0, {n_female + n_male}]")
    a_hi = min(t, n_female)
    female_heavy = chi2_cells(a_hi, n_female - a_hi, t - a_hi, n_male - (t - a_hi))
    c_hi = min(t, n_male)
    male_heavy = chi2_cells(t - c_hi, n_female - (t - c_hi), c_hi, n_male - c_hi)
    return max(female_heavy, male_heavy)


def passes_prefilter(t: int, n_female: int, n_male: int, critical: float = CHI2_CRIT_P05) -> bool:
    """True when a term with t containing posts could possibly reach the
    p=0.05 critical value and therefore deserves a test."""
    return max_possible_chi2(t, n_female, n_male) >= critical


def bh_select(pvalues: list[tuple[str, float]], alpha: float) -> set[str]:
    """Benjamini-Hochberg step-up selection.

    Sorts the m p-values ascending, finds the largest k with
    p(k) <= k*alpha/m, and rejects the k smallest.  Ties on the boundary
    p-value are rejected together (guaranteed by taking the largest such k).
    Returns the set of rejected term names; empty input yields an empty set.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha!r}")
    m = len(pvalues)
    if m == 0:
        return set()
    ordered = sorted(pvalues, key=lambda tp: tp[1])
    k = 0
    for i, (_, p) in enumerate(ordered, start=1):
        if p < 0.0 or p > 1.0:
            raise ValueError(f"p-value out of [0, 1]: {p!r}")
        if p <= i * alpha / m:
            k = i
    return {term for term, _ in ordered[:k]}

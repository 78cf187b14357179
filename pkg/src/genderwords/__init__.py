"""Gendered word-use analysis for timestamped short-post corpora.

Pipeline: ingest or synthesize a corpus, infer author gender from display
names, count per-gender document frequencies, test every term with a 2x2
chi-square under Benjamini-Hochberg correction (overall and per day), then
explore the survivors through KWIC samples, word associations, and themes.
"""

from .analysis import (
    AnalysisError,
    AnalysisResult,
    analyze,
    analyze_daily,
    analyze_overall,
    time_series,
    top_associations,
)
from .corpus import Corpus, Post, QuerySet, dedup_key, ingest, ingest_file
from .explore import KwicSample, ThemeStore, kwic
from .gender import GenderLabel, NameLexicon, classify, first_token
from .stats import SignificanceLevel, bh_select, chi2_sf, chi_square, max_possible_chi2
from .synth import SynthSpec, TermSpec, synth
from .text import DocFrequencyTable, build_table, tokenize

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "AnalysisResult",
    "Corpus",
    "DocFrequencyTable",
    "GenderLabel",
    "KwicSample",
    "NameLexicon",
    "Post",
    "QuerySet",
    "SignificanceLevel",
    "SynthSpec",
    "TermSpec",
    "ThemeStore",
    "analyze",
    "analyze_daily",
    "analyze_overall",
    "bh_select",
    "build_table",
    "chi2_sf",
    "chi_square",
    "classify",
    "dedup_key",
    "first_token",
    "ingest",
    "ingest_file",
    "kwic",
    "max_possible_chi2",
    "synth",
    "time_series",
    "tokenize",
    "top_associations",
]

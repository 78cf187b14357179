"""Command-line entry point tying the pipeline together.

Subcommands: ingest, synth, analyze, daily, kwic, assoc, series, export,
serve.  All randomness is seedable; every output artifact echoes the
configuration that produced it.  Exit codes: 0 success, 1 data error
(one-line diagnostic on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .analysis import AnalysisError, AnalysisResult, analyze, time_series, top_associations
from .corpus import Corpus, QuerySet, ingest_file
from .explore import format_kwic, kwic
from .gender import NameLexicon
from .synth import SynthSpec, synth

LEXICON_ENV = "GENDERWORDS_NAMES"
UI_ENV = "GENDERWORDS_UI"


def _load_lexicon(spec: str, threshold: float) -> NameLexicon:
    """'fixture' selects the built-in demo lexicon; anything else is a CSV path."""
    if spec == "fixture":
        return NameLexicon.fixture(threshold=threshold)
    return NameLexicon.from_csv(spec, threshold=threshold)


def _add_names_flag(parser, with_threshold=False):
    parser.add_argument(
        "--names",
        default=os.environ.get(LEXICON_ENV, "fixture"),
        help="name lexicon CSV (name,female_count,male_count), or 'fixture' for the "
        f"built-in demo lexicon; default from ${LEXICON_ENV}",
    )
    if with_threshold:
        parser.add_argument(
            "--threshold", type=float, default=0.90,
            help="minimum name-gender proportion for a confident label (default 0.90)",
        )


def _parse_alphas(raw: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"cannot parse alpha list: {raw!r}")


def cmd_ingest(args) -> int:
    queries = QuerySet.from_file(args.queries)
    corpus = ingest_file(args.input, queries)
    corpus.save(args.out)
    prov = corpus.provenance
    print(
        f"ingested {len(corpus)} posts from {prov['records_read']} records "
        f"({prov['malformed_skipped']} malformed, {prov['unmatched']} unmatched, "
        f"{prov['exact_duplicates']} exact + {prov['near_duplicates']} near duplicates dropped) "
        f"-> {args.out}"
    )
    return 0


def cmd_synth(args) -> int:
    spec = SynthSpec.from_json(args.spec)
    corpus = synth(spec, args.docs, seed=args.seed)
    corpus.save(args.out)
    print(f"generated {len(corpus)} posts over {spec.n_days} days (seed {args.seed}) -> {args.out}")
    return 0


def cmd_analyze(args) -> int:
    corpus = Corpus.load(args.corpus)
    lexicon = _load_lexicon(args.names, args.threshold)
    result = analyze(
        corpus,
        lexicon=lexicon,
        alphas=_parse_alphas(args.alphas),
        star_threshold=args.stars,
        jobs=args.jobs,
    )
    result.save(args.out)
    cfg = result.config
    print(
        f"analyzed {result.counts['posts']} posts "
        f"({result.counts['female']} female / {result.counts['male']} male / "
        f"{result.counts['unknown']} unknown); "
        f"tested {cfg['n_terms_tested']} of {cfg['n_terms_total']} terms; "
        f"{len(result.included_terms)} included "
        f"(threshold {cfg['gender_threshold']}, alphas {','.join(str(a) for a in cfg['alphas'])}, "
        f"stars >= {cfg['star_threshold']}) -> {args.out}"
    )
    return 0


def cmd_daily(args) -> int:
    result = AnalysisResult.load(args.result)
    records = sorted(result.daily.values(), key=lambda r: (-r.star_total, r.term))
    if args.term:
        records = [r for r in records if r.term == args.term]
        if not records:
            print(f"no daily stars recorded for term {args.term!r}")
            return 0
    print("term\tstar_total\tdays\tstars_by_day")
    for rec in records:
        stars = ",".join(str(s) for s in rec.stars_by_day)
        print(f"{rec.term}\t{rec.star_total}\t{rec.days}\t{stars}")
    return 0


def _labeled_corpus(args) -> Corpus:
    corpus = Corpus.load(args.corpus)
    lexicon = _load_lexicon(args.names, 0.90)
    return corpus.with_genders(lexicon)


def cmd_kwic(args) -> int:
    corpus = _labeled_corpus(args)
    sample = kwic(args.term, corpus, n=args.n, seed=args.seed)
    if sample.n_returned == 0:
        print(f"no posts contain term {args.term!r}")
        return 0
    print(format_kwic(sample))
    return 0


def cmd_assoc(args) -> int:
    corpus = _labeled_corpus(args)
    entries = top_associations(args.term, corpus, k=args.k)
    if not entries:
        print(f"no associations found for term {args.term!r}")
        return 0
    print("word\tchi2\tdirection")
    for e in entries:
        print(f"{e.word}\t{e.chi2:.3f}\t{e.direction.value if e.direction else ''}")
    return 0


def cmd_series(args) -> int:
    corpus = _labeled_corpus(args)
    rows = time_series(args.term, corpus)
    lines = ["day,prop_female,prop_male"]
    for row in rows:
        f = "" if row["prop_female"] is None else repr(row["prop_female"])
        m = "" if row["prop_male"] is None else repr(row["prop_male"])
        lines.append(f"{row['day']},{f},{m}")
    output = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
        print(f"wrote {len(rows)} days -> {args.out}")
    else:
        sys.stdout.write(output)
    return 0


def cmd_export(args) -> int:
    result = AnalysisResult.load(args.result)
    if args.format == "csv":
        result.to_csv(args.out)
    else:
        result.save(args.out)
    print(f"exported {len(result.included_terms)} included terms -> {args.out}")
    return 0


def cmd_serve(args) -> int:
    from .server import create_app, serve

    result = AnalysisResult.load(args.result)
    corpus = Corpus.load(args.corpus)
    lexicon = _load_lexicon(args.names, result.config.get("gender_threshold") or 0.90)
    corpus = corpus.with_genders(lexicon)
    themes = args.themes or str(Path(args.result).with_name("themes.json"))
    ui_dir = args.ui or os.environ.get(UI_ENV)
    app = create_app(result, corpus, themes, ui_dir=ui_dir)
    print(f"serving analysis on http://{args.host}:{args.port}/ (themes: {themes})")
    serve(app, port=args.port, host=args.host)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="genderwords",
        description="Detect and explore gender differences in word use across a post corpus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="filter, dedup, and cache a raw post file")
    p.add_argument("--input", required=True, help="JSONL or CSV file of raw records")
    p.add_argument("--queries", required=True, help="query file, one word or phrase per line")
    p.add_argument("--out", required=True, help="corpus cache output path")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--spec", required=True, help="JSON vocabulary spec")
    p.add_argument("--docs", type=int, required=True, help="number of posts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("analyze", help="run the overall + daily keyness analysis")
    p.add_argument("--corpus", required=True)
    _add_names_flag(p, with_threshold=True)
    p.add_argument("--alphas", default="0.05,0.01,0.001", help="comma-separated alpha levels")
    p.add_argument("--stars", type=int, default=7, help="daily star threshold (default 7)")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for counting")
    p.add_argument("--out", required=True, help="result JSON output path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("daily", help="print per-day star records from a result")
    p.add_argument("--result", required=True)
    p.add_argument("--term", help="restrict to one term")
    p.set_defaults(func=cmd_daily)

    p = sub.add_parser("kwic", help="print a random sample of posts containing a term")
    p.add_argument("--corpus", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    _add_names_flag(p)
    p.set_defaults(func=cmd_kwic)

    p = sub.add_parser("assoc", help="print top associated words for a term")
    p.add_argument("--corpus", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--k", type=int, default=20)
    _add_names_flag(p)
    p.set_defaults(func=cmd_assoc)

    p = sub.add_parser("series", help="per-day usage proportions for a term (CSV)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--term", required=True)
    p.add_argument("--out", help="write CSV here instead of stdout")
    _add_names_flag(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("export", help="export an analysis result as CSV or JSON")
    p.add_argument("--result", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="serve the analysis over HTTP with the web UI")
    p.add_argument("--result", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--themes", help="theme store path (default: themes.json next to the result)")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ui", help=f"directory with the built UI bundle; default from ${UI_ENV}")
    _add_names_flag(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AnalysisError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

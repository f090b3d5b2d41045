"""``termweaver run|bench|extrapolate``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .extract import DEFAULT_PATTERN, PatternError, compile_pattern
from .pipeline import PipelineConfig, PipelineError, read_timings, run_pipeline, timings_tsv, write_timings
from .preprocess import CorpusError
from .scaling import bench_scaling, fit_quadratic, totals_by_docs
from .similarity import SimilarityParams


def _unit_float(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is not in [0, 1]")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def _add_pipeline_options(p: argparse.ArgumentParser) -> None:
    defaults = SimilarityParams()
    p.add_argument("--input", required=True, type=Path, help="corpus directory or single file")
    p.add_argument("--format", choices=("raw", "pretagged"), default="raw")
    p.add_argument("--pattern", default=DEFAULT_PATTERN, help="regular expression over coarse POS tags")
    p.add_argument("--acronyms", choices=("explicit", "implicit", "off"), default="explicit")
    p.add_argument("--token-sim", type=_unit_float, default=defaults.token_threshold)
    p.add_argument("--phrase-sim", type=_unit_float, default=defaults.phrase_threshold)
    p.add_argument("--threshold", type=float, default=2.0, help="C-value cut-off (strict)")
    p.add_argument("--idf", action="store_true", help="scale scores by mean stem IDF")
    p.add_argument("--stopwords", type=Path, default=None)
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--seed", type=int, default=0, help="colour palette seed")
    p.add_argument("--window", type=_nonneg_int, default=40, help="concordance context, in characters")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="termweaver", description="Unsupervised multi-word term recognition.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="recognise terms and write dictionary, markup and pages")
    _add_pipeline_options(run)
    run.add_argument("--bench", action="store_true", help="write per-step timings.json")
    run.add_argument("--plot", action="store_true", help="write timings.tsv for external plotting")

    bench = sub.add_parser("bench", help="time the pipeline on growing corpus prefixes")
    _add_pipeline_options(bench)
    bench.add_argument("--steps", type=int, default=10)

    ext = sub.add_parser("extrapolate", help="fit a quadratic to timings and predict")
    ext.add_argument("--timings", required=True, type=Path)
    ext.add_argument("--predict", type=int, action="append", required=True, help="document count (repeatable)")
    ext.add_argument("--module", default=None, help="fit one step instead of the total")
    return parser


def _config(args, **extra) -> PipelineConfig:
    return PipelineConfig(
        input=args.input,
        format=args.format,
        pattern=args.pattern,
        acronyms=args.acronyms,
        similarity=SimilarityParams(token_threshold=args.token_sim, phrase_threshold=args.phrase_sim),
        threshold=args.threshold,
        idf=args.idf,
        stopwords=args.stopwords,
        out=args.out,
        seed=args.seed,
        window=args.window,
        **extra,
    )


def _cmd_run(args) -> int:
    compile_pattern(args.pattern)
    result = run_pipeline(_config(args, bench=args.bench, plot=args.plot))
    print(f"{len(result.docs)} documents, {len(result.dictionary)} terms, "
          f"{len(result.annotations)} annotations -> {args.out}")
    return 0


def _cmd_bench(args) -> int:
    config = _config(args)
    records = bench_scaling(config, args.steps)
    args.out.mkdir(parents=True, exist_ok=True)
    write_timings(args.out / "timings.json", records)
    (args.out / "timings.tsv").write_text(timings_tsv(records), "utf-8")
    for docs, secs in totals_by_docs(records):
        print(f"{docs}\t{secs:.4f}")
    print(f"{len(records)} timing records -> {args.out / 'timings.json'}")
    return 0


def _cmd_extrapolate(args) -> int:
    records = read_timings(args.timings)
    fit = fit_quadratic(totals_by_docs(records, args.module))
    print(f"a={fit.a:.6g}\tb={fit.b:.6g}\tc={fit.c:.6g}\trss={fit.rss:.6g}")
    for n in args.predict:
        print(f"{n}\t{fit.predict(n):.4f}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handlers = {"run": _cmd_run, "bench": _cmd_bench, "extrapolate": _cmd_extrapolate}
    try:
        return handlers[args.command](args)
    except PipelineError as exc:
        print(f"termweaver: error in step {exc.step}: {exc.cause}", file=sys.stderr)
    except (PatternError, CorpusError, ValueError, OSError, KeyError) as exc:
        print(f"termweaver: {exc}", file=sys.stderr)
    return 1


if __name__ == "__main__":
    sys.exit(main())

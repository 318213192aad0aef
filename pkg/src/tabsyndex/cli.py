"""Command-line entry point: ``tabsyndex {evaluate,monitor,sanity,generate,fetch}``.

Exit status is 0 on success, 1 when an evaluation fails and 2 for usage
errors (bad flags or out-of-range values).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .datasets import NAMES, ChecksumError, FetchError, fetch_dataset
from .evaluator import TabSynDex, check_params
from .generators import KINDS, GeneratorSpec, generate
from .ingest import IngestError, SchemaConfig, load_schema_config, read_table, write_csv
from .monitor import emit_progression, monitor_directory
from .report import WeightConfig, render_report
from .sanity import sanity_check
from .table import SchemaMismatchError

log = logging.getLogger("tabsyndex")


class UsageError(Exception):
    pass


class _HelpFormatter(argparse.ArgumentDefaultsHelpFormatter):
    """Show every flag's default; required flags say so, and help texts may spell out a None default."""

    def _get_help_string(self, action):
        text = action.help or ""
        if "(default:" in text or action.default is argparse.SUPPRESS or not action.option_strings:
            return text
        if action.required:
            return text + " (required)"
        if action.default is None:
            return text + " (default: none)"
        return super()._get_help_string(action)


def _formatter(prog):
    return _HelpFormatter(prog, max_help_position=32)


def _add_scoring_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--schema", help="schema override file (.toml or .json)")
    p.add_argument("--target", help="target column for ML efficacy (default: schema target, else last column)")
    p.add_argument("--alpha", type=float, default=1.2, help="pMSE index base, must be > 1")
    p.add_argument("--beta", type=float, default=2.0, help="per-category coverage ratio cap, must be >= 1")
    p.add_argument("--bins", type=int, default=20, help="equal-width bins for continuous coverage")
    p.add_argument("--weights", default="1,1,1,1,1", help="component weights basic,corr,pmse,coverage,ml")
    p.add_argument("--seed", type=int, default=42, help="seed for splits and learners")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tabsyndex", description=__doc__.splitlines()[0], formatter_class=_formatter)
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="score one synthetic table", formatter_class=_formatter)
    p.add_argument("--real", required=True, help="real data CSV")
    p.add_argument("--synthetic", required=True, help="synthetic data CSV")
    _add_scoring_flags(p)
    p.add_argument("--format", choices=("json", "text"), default="json", help="report format")
    p.add_argument("--out", help="write the report here (default: stdout)")

    p = sub.add_parser("monitor", help="score per-epoch synthetic dumps", formatter_class=_formatter)
    p.add_argument("--real", required=True, help="real data CSV")
    p.add_argument("--dir", required=True, help="directory of epoch CSV files")
    p.add_argument("--pattern", default="epoch_{n}.csv", help="file name pattern; {n} captures the epoch")
    _add_scoring_flags(p)
    p.add_argument("--out", required=True, help="progression CSV path")
    p.add_argument("--plot", help="optional SVG line chart path")

    p = sub.add_parser("sanity", help="subset-vs-subset sanity check", formatter_class=_formatter)
    p.add_argument("--data", required=True, help="dataset CSV")
    p.add_argument("--proportions", default="10,25,50,100", help="percent of the second half used as synthetic")
    p.add_argument("--dataset", help="dataset label recorded in the result")
    _add_scoring_flags(p)
    p.add_argument("--out", help="write the JSON result here (default: stdout)")

    p = sub.add_parser("generate", help="baseline synthetic data for demos", formatter_class=_formatter)
    p.add_argument("--real", required=True, help="real data CSV")
    p.add_argument("--schema", help="schema override file (.toml or .json)")
    p.add_argument("--kind", choices=KINDS, default="resample", help="generator kind")
    p.add_argument("--sigma", type=float, default=0.0, help="jitter noise in column standard deviations")
    p.add_argument("--rows", type=int, help="output row count (default: same as real)")
    p.add_argument("--seed", type=int, default=42, help="random seed")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("fetch", help="download a benchmark dataset", formatter_class=_formatter)
    p.add_argument("--dataset", required=True, choices=NAMES, help="dataset name")
    p.add_argument("--out", help="destination directory (default: $TABSYNDEX_DATA_DIR or ~/.cache/tabsyndex)")
    return parser


def _schema_config(args) -> SchemaConfig:
    config = load_schema_config(args.schema) if args.schema else SchemaConfig()
    target = getattr(args, "target", None)
    if target:
        config = SchemaConfig(config.kinds, target, config.categorical_threshold)
    return config


def _scorer(args) -> TabSynDex:
    try:
        weights = WeightConfig.parse(args.weights)
        check_params(args.alpha, args.beta, args.bins, 0.2)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    return TabSynDex(alpha=args.alpha, beta=args.beta, bins=args.bins, weights=weights, seed=args.seed,
                     target=args.target, jobs=args.jobs)


def _emit(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _parse_proportions(text: str) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--proportions must be comma-separated numbers, got {text!r}") from None
    if not values or any(not 0 < v <= 100 for v in values):
        raise UsageError("--proportions must be percentages in (0, 100]")
    return [v / 100 for v in values]


def _run(args) -> int:
    if args.command == "evaluate":
        scorer = _scorer(args)
        config = _schema_config(args)
        real = read_table(args.real, config)
        synth = read_table(args.synthetic, SchemaConfig.from_schema(real.schema))
        report = scorer.fit(real).evaluate(synth)
        if real.row_count != synth.row_count:
            log.warning("real and synthetic row counts differ (%d vs %d); pMSE null approximation is best for "
                        "balanced sizes", real.row_count, synth.row_count)
        _emit(render_report(report, args.format), args.out)
        return 0

    if args.command == "monitor":
        scorer = _scorer(args)
        real = read_table(args.real, _schema_config(args))
        series = monitor_directory(real, args.dir, args.pattern, scorer, jobs=args.jobs)
        for n in series.warnings:
            log.warning("[%s] %s", n.code, n.message)
        emit_progression(series, args.out, args.plot)
        return 0

    if args.command == "sanity":
        scorer = _scorer(args)
        proportions = _parse_proportions(args.proportions)
        data = read_table(args.data, _schema_config(args))
        params = scorer.get_params()
        params.pop("seed")
        params.pop("jobs")
        result = sanity_check(data, proportions, seed=args.seed, dataset=args.dataset or Path(args.data).stem,
                              jobs=args.jobs, **params)
        _emit(result.to_json().encode("utf-8"), args.out)
        return 0

    if args.command == "generate":
        try:
            spec = GeneratorSpec(args.kind, args.sigma, args.seed, args.rows)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        real = read_table(args.real, _schema_config(args))
        write_csv(generate(real, spec), args.out)
        return 0

    if args.command == "fetch":
        path = fetch_dataset(args.dataset, args.out)
        print(path)
        return 0
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="tabsyndex: %(levelname)s: %(message)s", force=True)
    try:
        return _run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"tabsyndex: error: {exc}", file=sys.stderr)
        return 2
    except (IngestError, SchemaMismatchError, FetchError, ChecksumError, FileNotFoundError, ValueError,
            KeyError, OSError) as exc:
        print(f"tabsyndex: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

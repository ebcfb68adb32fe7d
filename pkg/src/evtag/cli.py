"""Command-line interface: ``evt <command> [options]``.

Exit status is 0 on success, 1 on usage errors and 2 on data, format or file errors.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import TYPE_CHECKING, NoReturn

from evtag.corpus import (
    corpus_stats,
    format_corpus,
    generate_synthetic_splits,
    load_corpus,
    synthetic_vocabulary,
)
from evtag.embeddings import load_vectors, oov_rate, random_vectors, write_text_vectors
from evtag.errors import EvtagError
from evtag.evaluation import (
    MatchMode,
    class_confusion,
    format_report,
    mcnemar,
    parse_kv_report,
    pos_breakdown,
    render_f1_svg,
    score,
)
from evtag.network import NetworkConfig, model_to_bytes, predict_corpus, read_model_file
from evtag.training import TrainConfig, load_config_file, train
from evtag.utils import write_bytes_atomic, write_text_atomic

if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

__all__ = [
    "EXIT_OK",
    "EXIT_USAGE",
    "EXIT_DATA",
    "UsageError",
    "Args",
    "build_parser",
    "parse_args",
    "configure_logging",
    "main",
]

logger: logging.Logger = logging.getLogger(__name__)

EXIT_OK: int = 0
EXIT_USAGE: int = 1
EXIT_DATA: int = 2

SYNTH_FILES: tuple[str, ...] = ("train.tsv", "dev.tsv", "test.tsv")
SYNTH_VECTORS: str = "vectors.txt"


class UsageError(Exception):
    """Invalid combination of command-line arguments."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Args:
    command: str
    verbosity: int = 0
    train: str | None = None
    dev: str | None = None
    test: str | None = None
    vectors: str | None = None
    config: str | None = None
    model: str | None = None
    input: str | None = None
    output: str | None = None
    format: str = "table"
    seed: int | None = None
    dim: int = 50
    sizes: tuple[int, int, int] = (2000, 200, 200)
    diagnostics: bool = False
    exact: bool = False
    paths: list[str] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evt", description="Joint event detection and classification.")
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        dest="verbosity",
        default=0,
        help="Increase logging verbosity (0-2).",
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    convert = commands.add_parser("convert", help="Canonicalize a column-format file.")
    convert.add_argument("--in", dest="input", required=True, help="Column file to read.")
    convert.add_argument("--out", dest="output", required=True, help="Column file to write.")

    synth = commands.add_parser(
        "synth", help="Write a synthetic train/dev/test split and word vectors."
    )
    synth.add_argument("--out", dest="output", required=True, help="Output directory.")
    synth.add_argument("--seed", type=int, default=1, help="Generator seed.")
    synth.add_argument("--dim", type=int, default=50, help="Word vector size.")
    synth.add_argument(
        "--sizes",
        type=int,
        nargs=3,
        default=[2000, 200, 200],
        metavar=("TRAIN", "DEV", "TEST"),
        help="Sentences per split.",
    )

    stats = commands.add_parser("stats", help="Event counts per class and POS.")
    stats.add_argument("paths", nargs="+", help="Column files.")

    train_cmd = commands.add_parser("train", help="Train a tagger.")
    train_cmd.add_argument("--train", required=True, help="Training column file.")
    train_cmd.add_argument("--dev", required=True, help="Development column file.")
    train_cmd.add_argument(
        "--test", default=None, help="Optional test column file, scored with the best model."
    )
    train_cmd.add_argument("--vectors", required=True, help="Word vector text file.")
    train_cmd.add_argument("--config", default=None, help="Training configuration file.")
    train_cmd.add_argument("--model", required=True, help="Model file to write.")
    train_cmd.add_argument(
        "--seed", type=int, default=None, help="Override the configured seed."
    )

    tag = commands.add_parser("tag", help="Tag a column file with a trained model.")
    tag.add_argument("--model", required=True, help="Model file.")
    tag.add_argument("--in", dest="input", required=True, help="Column file to tag.")
    tag.add_argument("--out", dest="output", required=True, help="Column file to write.")

    score_cmd = commands.add_parser("score", help="Score a system file against a gold file.")
    score_cmd.add_argument(
        "paths", nargs=2, metavar="FILE", help="Gold and system column files."
    )
    score_cmd.add_argument(
        "--format", choices=["table", "kv"], default="table", help="Report format."
    )
    score_cmd.add_argument(
        "--diagnostics", action="store_true", help="Append POS recall and class confusion."
    )
    score_cmd.add_argument(
        "--out", dest="output", default=None, help="Write the report here instead of stdout."
    )

    compare = commands.add_parser("compare", help="McNemar's test between two systems.")
    compare.add_argument(
        "paths", nargs=3, metavar="FILE", help="Gold, system A and system B column files."
    )
    compare.add_argument(
        "--exact", action="store_true", help="Use the exact binomial variant."
    )

    embstats = commands.add_parser("embstats", help="Out-of-vocabulary rates of corpora.")
    embstats.add_argument("--vectors", required=True, help="Word vector text file.")
    embstats.add_argument("paths", nargs="+", help="Column files.")

    plot = commands.add_parser("plot", help="Plot F1 scores of several kv reports as SVG.")
    plot.add_argument("paths", nargs="+", help="Reports written with --format kv.")
    plot.add_argument(
        "--label",
        dest="labels",
        action="append",
        default=[],
        help="System label, once per report.",
    )
    plot.add_argument("--out", dest="output", required=True, help="SVG file to write.")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> Args:
    """Parse command-line arguments; usage errors exit with status 1."""
    ns = build_parser().parse_args(argv)
    values = {
        name: value for name, value in vars(ns).items() if name in Args.__dataclass_fields__
    }
    if "sizes" in values:
        values["sizes"] = tuple(values["sizes"])
    return Args(**values)


def configure_logging(verbosity: int) -> None:
    log_level: int
    if verbosity == 0:
        log_level = logging.WARNING
    elif verbosity == 1:
        log_level = logging.INFO
    else:
        log_level = logging.DEBUG
    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(output, text)


def run_convert(args: Args) -> int:
    corpus = load_corpus(args.input)
    write_text_atomic(args.output, format_corpus(corpus))
    return EXIT_OK


def run_synth(args: Args) -> int:
    if any(size < 0 for size in args.sizes):
        raise UsageError(f"--sizes must be non-negative: {' '.join(map(str, args.sizes))}")
    if args.dim <= 0:
        raise UsageError(f"--dim must be positive: {args.dim}")
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    seed = 1 if args.seed is None else args.seed
    splits = generate_synthetic_splits(seed, args.sizes)
    for name, corpus in zip(SYNTH_FILES, splits):
        write_text_atomic(out_dir / name, format_corpus(corpus))
    buffer = io.StringIO()
    write_text_vectors(random_vectors(synthetic_vocabulary(), args.dim, seed), buffer)
    write_text_atomic(out_dir / SYNTH_VECTORS, buffer.getvalue())
    logger.info("Wrote synthetic splits %s to %s", [len(c) for c in splits], out_dir)
    return EXIT_OK


def run_stats(args: Args) -> int:
    blocks = [corpus_stats(load_corpus(path)).format_table(title=path) for path in args.paths]
    sys.stdout.write("\n\n".join(blocks) + "\n")
    return EXIT_OK


def run_train(args: Args) -> int:
    if args.config is None:
        net_config, train_config = NetworkConfig(), TrainConfig()
    else:
        net_config, train_config = load_config_file(args.config)
    if args.seed is not None:
        train_config = replace(train_config, seed=args.seed)
    vectors_path = str(Path(args.vectors).resolve())
    embeddings = load_vectors(vectors_path)
    train_corpus = load_corpus(args.train, "train")
    dev_corpus = load_corpus(args.dev, "dev")
    test_corpus = None if args.test is None else load_corpus(args.test, "test")
    model, history = train(
        train_corpus, dev_corpus, embeddings, net_config, train_config, vectors_path
    )
    write_bytes_atomic(args.model, model_to_bytes(model))
    write_text_atomic(f"{args.model}.history.csv", history.to_csv())
    logger.info("Wrote model to %s (best epoch %d)", args.model, history.best_epoch)
    if test_corpus is not None:
        report = score(test_corpus, predict_corpus(test_corpus, model))
        sys.stdout.write(format_report(report, "table", title="test"))
    return EXIT_OK


def run_tag(args: Args) -> int:
    model = read_model_file(args.model)
    corpus = load_corpus(args.input)
    write_text_atomic(args.output, format_corpus(predict_corpus(corpus, model)))
    return EXIT_OK


def run_score(args: Args) -> int:
    if args.diagnostics and args.format != "table":
        raise UsageError("--diagnostics requires --format table")
    gold_path, system_path = args.paths
    gold, system = load_corpus(gold_path), load_corpus(system_path)
    report = score(gold, system)
    text = format_report(report, args.format, title=Path(system_path).name)
    if args.diagnostics:
        text += "\n" + pos_breakdown(gold, system).format_table() + "\n"
        for mode in MatchMode:
            matrix = class_confusion(gold, system, mode)
            text += f"\nClass confusion ({mode.value})\n" + matrix.format_table() + "\n"
    _emit(text, args.output)
    return EXIT_OK


def run_compare(args: Args) -> int:
    gold, system_a, system_b = (load_corpus(p) for p in args.paths)
    lines = []
    for mode in MatchMode:
        for attribute in (False, True):
            result = mcnemar(
                system_a, system_b, gold, mode, attribute=attribute, exact=args.exact
            )
            lines.append(result.format_line(f"{mode.value}{'+class' if attribute else ''}"))
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def run_embstats(args: Args) -> int:
    table = load_vectors(args.vectors)
    for path in args.paths:
        sys.stdout.write(oov_rate(load_corpus(path), table).format_line(path) + "\n")
    return EXIT_OK


def run_plot(args: Args) -> int:
    if len(args.labels) != len(args.paths):
        raise UsageError(
            f"got {len(args.labels)} --label values for {len(args.paths)} reports"
        )
    reports = []
    for path in args.paths:
        with open(path, encoding="utf-8") as f:
            reports.append(parse_kv_report(f.read()))
    write_text_atomic(args.output, render_f1_svg(reports, args.labels))
    return EXIT_OK


COMMANDS: dict[str, Callable[[Args], int]] = {
    "convert": run_convert,
    "synth": run_synth,
    "stats": run_stats,
    "train": run_train,
    "tag": run_tag,
    "score": run_score,
    "compare": run_compare,
    "embstats": run_embstats,
    "plot": run_plot,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    configure_logging(args.verbosity)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"evt {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (EvtagError, OSError, UnicodeError) as e:
        logger.debug("%s failed", args.command, exc_info=e)
        print(f"evt {args.command}: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

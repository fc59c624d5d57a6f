"""Command-line front end.

Subcommands: stats, corr, mpole, fit, generate, verify. Machine-readable
output (JSON, CSV) goes to stdout or the requested file; diagnostics go
to stderr only. Exit codes: 0 success, 1 usage or data error, 2 reserved
for a failed verification.
"""

import argparse
import json
import sys

from corrsynth.corr import corr_to_csv, corr_to_json, correlation_matrix
from corrsynth.dataset import column_stats, load_csv, write_csv
from corrsynth.errors import CorrSynthError
from corrsynth.generator import (
    GeneratorConfig,
    MODE_EXACT,
    MODE_EXPECTED,
    fit,
    generate,
    load_blueprint,
    save_blueprint,
)
from corrsynth.mpole import multipole
from corrsynth.verify import verify

FORMAT_VERSION = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors by default; this CLI
    # reserves 2 for verification failure, so remap to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(
        prog="corrsynth",
        description=(
            "Generate synthetic tabular data that preserves the source's "
            "correlation structure, and verify that it does."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="print per-column means and stds as JSON")
    p.add_argument("--input", required=True, help="source CSV")
    p.add_argument("--delimiter", default=",", help="field separator")

    p = sub.add_parser("corr", help="write the correlation matrix")
    p.add_argument("--input", required=True, help="source CSV")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--delimiter", default=",", help="field separator")

    p = sub.add_parser("mpole", help="multipole correlation of named columns")
    p.add_argument("--input", required=True, help="source CSV")
    p.add_argument(
        "--columns", required=True, help="comma-separated column names, at least 2"
    )
    p.add_argument("--delimiter", default=",", help="field separator")

    p = sub.add_parser("fit", help="fit a blueprint and write it as JSON")
    p.add_argument("--input", required=True, help="source CSV")
    p.add_argument("--out", required=True, help="blueprint JSON path")
    p.add_argument("--delimiter", default=",", help="field separator")

    p = sub.add_parser("generate", help="generate synthetic rows")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="source CSV (blueprint fitted inline)")
    src.add_argument("--blueprint", help="saved blueprint JSON")
    p.add_argument("--rows", required=True, type=int, help="synthetic row count")
    p.add_argument("--seed", type=int, default=0, help="noise seed")
    p.add_argument("--mode", choices=(MODE_EXACT, MODE_EXPECTED), default=MODE_EXACT)
    p.add_argument("--out", required=True, help="synthetic CSV path")
    p.add_argument("--delimiter", default=",", help="field separator")

    p = sub.add_parser("verify", help="compare correlation structure")
    p.add_argument("--source", required=True, help="source CSV")
    p.add_argument("--synthetic", required=True, help="synthetic CSV")
    p.add_argument("--max-order", type=int, default=3, help="highest order k")
    p.add_argument("--tolerance", type=float, default=1e-7)
    p.add_argument("--subset-cap", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0, help="subset sampling seed")
    p.add_argument("--delimiter", default=",", help="field separator")

    return parser


def _cmd_stats(args):
    d = load_csv(args.input, args.delimiter)
    stats = column_stats(d)
    payload = {
        "format_version": FORMAT_VERSION,
        "columns": list(stats.columns),
        "means": [float(v) for v in stats.means],
        "stds": [float(v) for v in stats.stds],
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_corr(args):
    d = load_csv(args.input, args.delimiter)
    c = correlation_matrix(d)
    if args.format == "json":
        text = corr_to_json(c)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        else:
            print(text)
    else:
        if args.out:
            corr_to_csv(c, args.out, args.delimiter)
        else:
            import csv as _csv

            writer = _csv.writer(sys.stdout, delimiter=args.delimiter, lineterminator="\n")
            writer.writerow(c.columns)
            for row in c.entries:
                writer.writerow([repr(float(v)) for v in row])
    return 0


def _cmd_mpole(args):
    d = load_csv(args.input, args.delimiter)
    names = [s.strip() for s in args.columns.split(",") if s.strip()]
    indices = []
    for name in names:
        if name not in d.columns:
            raise CorrSynthError(f"unknown column {name!r}")
        indices.append(d.columns.index(name))
    result = multipole(d, indices)
    payload = {
        "format_version": FORMAT_VERSION,
        "subset": [d.columns[i] for i in result.subset],
        "mp": result.value,
        "minimizer": [float(v) for v in result.minimizer],
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_fit(args):
    d = load_csv(args.input, args.delimiter)
    save_blueprint(fit(d), args.out)
    return 0


def _cmd_generate(args):
    if args.blueprint:
        b = load_blueprint(args.blueprint)
    else:
        b = fit(load_csv(args.input, args.delimiter))
    cfg = GeneratorConfig(rows=args.rows, seed=args.seed, mode=args.mode)
    result = generate(b, cfg)
    write_csv(result.dataset, args.out, args.delimiter)
    with open(args.out + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(result.metadata(), fh, indent=2)
        fh.write("\n")
    return 0


def _cmd_verify(args):
    source = load_csv(args.source, args.delimiter)
    synthetic = load_csv(args.synthetic, args.delimiter)
    report = verify(
        source,
        synthetic,
        args.max_order,
        subset_cap=args.subset_cap,
        sample_seed=args.seed,
        tolerance=args.tolerance,
    )
    print(report.to_json())
    return 0 if report.passed else 2


_COMMANDS = {
    "stats": _cmd_stats,
    "corr": _cmd_corr,
    "mpole": _cmd_mpole,
    "fit": _cmd_fit,
    "generate": _cmd_generate,
    "verify": _cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CorrSynthError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"corrsynth: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``hypervec <subcommand> [flags]``.

Exit codes: 0 success, 1 usage error, 2 data or I/O error, 3 internal error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from . import __version__
from .core import DEFAULT_DIM
from .data import CorpusError, bundled_corpus_root, load_corpus
from .experiments import (
    BASELINES,
    GENERATORS,
    STRATEGIES,
    bundle_divergence,
    language_id,
    record_demo,
    similarity_profile,
)

SEED_ENV = "HYPERVEC_SEED"

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("hypervec")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return _seed(raw)
    except (ValueError, argparse.ArgumentTypeError):
        raise UsageError(f"{SEED_ENV}={raw!r} is not a valid seed") from None


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _comment(args: argparse.Namespace) -> str:
    flags = " ".join(f"--{k.replace('_', '-')}={v}" for k, v in sorted(vars(args).items())
                     if k not in ("func",))
    return f"# hypervec {__version__} {args.command} {flags}"


def _write_csv(path: Path, comment: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    buf = io.StringIO()
    buf.write(comment + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(path, buf.getvalue())


def _write_text(path: Path, text: str) -> None:
    path = Path(path)
    if not path.parent.is_dir():
        raise UsageError(f"output directory {path.parent} does not exist")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_sim_profile(args) -> int:
    sims = similarity_profile(args.kind, args.count, args.dim, args.seed, args.reps)
    header = [""] + [str(j) for j in range(args.count)]
    rows = [[str(i)] + [_fmt(v) for v in row] for i, row in enumerate(sims)]
    _write_csv(args.out, _comment(args), header, rows)
    return EXIT_OK


def cmd_bundle_error(args) -> int:
    if args.count < 2:
        raise UsageError("--count must be at least 2 for bundle-error")
    result = bundle_divergence(args.count, args.dim, args.reps, args.seed, args.baseline)
    rows = []
    for pos, n in enumerate(result["counts"]):
        for name in STRATEGIES:
            rows.append([int(n), name, _fmt(result[name][pos])])
    _write_csv(args.out, _comment(args), ["numOperands", "strategy", "meanCosine"], rows)
    return EXIT_OK


def cmd_record_demo(args) -> int:
    rows = []
    for q in record_demo(args.dim, args.seed):
        for idx, (name, sim) in enumerate(zip(q.member_names, q.similarities)):
            rows.append([f"r{q.record}", q.variable, idx, name, _fmt(sim),
                         int(idx == q.expected_index)])
    _write_csv(args.out, _comment(args),
               ["record", "variable", "index", "member", "similarity", "stored"], rows)
    return EXIT_OK


def cmd_langid(args) -> int:
    root = Path(args.corpus) if args.corpus else bundled_corpus_root()
    train = load_corpus(root, "train")
    test = load_corpus(root, "test")
    result = language_id(train, test, args.ngram, args.dim, args.seed)

    out = Path(args.out)
    metrics = result.metrics()
    metrics.update({"ngram": args.ngram, "dim": args.dim, "seed": args.seed,
                    "version": __version__})
    _write_text(out, json.dumps(metrics, indent=2, sort_keys=True) + "\n")
    header = ["true\\predicted"] + result.labels
    rows = [[label] + [int(c) for c in row] for label, row in zip(result.labels, result.confusion)]
    _write_csv(out.with_name(out.stem + ".confusion.csv"), _comment(args), header, rows)
    if args.model:
        result.model.save(args.model)
    print(f"accuracy {result.accuracy:.4f} on {int(result.confusion.sum())} sentences "
          f"({len(result.labels)} languages, chance {result.chance:.3f})")
    return EXIT_OK


def build_parser(default_seed: int) -> argparse.ArgumentParser:
    parser = _Parser(prog="hypervec", description="Hyperdimensional computing experiments.")
    parser.add_argument("--version", action="version", version=f"hypervec {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(p, count_default: Optional[int] = None, reps: bool = False):
        p.add_argument("--dim", type=_positive, default=DEFAULT_DIM, help="hypervector dimension")
        p.add_argument("--seed", type=_seed, default=default_seed,
                       help=f"random seed (default from ${SEED_ENV}, else 0)")
        p.add_argument("--out", type=Path, required=True, help="output file")
        if count_default is not None:
            p.add_argument("--count", type=_positive, default=count_default)
        if reps:
            p.add_argument("--reps", type=_positive, default=1, help="repetitions to average")

    p = sub.add_parser("sim-profile", help="pairwise similarity of a basis set (CSV)")
    p.add_argument("--kind", choices=sorted(GENERATORS), default="level")
    common(p, count_default=10, reps=True)
    p.set_defaults(func=cmd_sim_profile)

    p = sub.add_parser("bundle-error", help="majority tie-breaking vs exact sum (CSV)")
    common(p, count_default=100, reps=True)
    p.add_argument("--baseline", choices=BASELINES, default="mean",
                   help="compare against the exact sum or its quantization")
    p.set_defaults(func=cmd_bundle_error, reps=25)

    p = sub.add_parser("record-demo", help="fruit-record hash table queries (CSV)")
    common(p)
    p.set_defaults(func=cmd_record_demo)

    p = sub.add_parser("langid", help="n-gram language identification (JSON + CSV)")
    common(p)
    p.add_argument("--ngram", type=_positive, default=3, help="n-gram size")
    p.add_argument("--corpus", type=Path, default=None,
                   help="corpus root with train/ and test/ (default: bundled sample)")
    p.add_argument("--model", type=Path, default=None, help="also save the trained model here")
    p.set_defaults(func=cmd_langid)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        parser = build_parser(_default_seed())
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UsageError as exc:
        print(f"hypervec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, OSError) as exc:
        print(f"hypervec: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"hypervec: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"hypervec: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.

Exit status: 0 success, 1 law failure or corrupt codec input, 2 usage error,
3 a size guard refused the computation.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import codec, oracle
from .errors import CodecError, TooLarge
from .huffman import byte_multiset, code_table, huffman_tree, huffman_weight
from .multiset import Multiset, classify_dyadic, entropy_w, parse_symbol
from .tree import to_dot, weight

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TOO_LARGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.9f}"


def _split_top(text: str, sep: str) -> List[str]:
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append(text[start:i])
            start = i + 1
    out.append(text[start:])
    return out


def _add_count(counts: dict, sym_text: str, count_text: str, where: str) -> None:
    try:
        sym = parse_symbol(sym_text.strip())
        n = int(count_text)
    except ValueError as exc:
        raise UsageError(f"{where}: {exc}") from None
    if n < 0:
        raise UsageError(f"{where}: negative count {n}")
    if n:
        counts[sym] = counts.get(sym, 0) + n


def parse_inline(text: str) -> Multiset:
    """``a=1,b=2``; duplicate symbols are summed."""
    counts: dict = {}
    for item in _split_top(text, ","):
        if not item.strip():
            continue
        sym, eq, n = item.rpartition("=")
        if not eq:
            raise UsageError(f"inline entry {item!r} is not symbol=count")
        _add_count(counts, sym, n, "--inline")
    return Multiset(counts)


def parse_counts_file(text: str) -> Multiset:
    """One ``symbol<TAB>count`` per line; ``#`` starts a comment line."""
    counts: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = line.rstrip("\r\n").split("\t")
        if len(parts) != 2:
            raise UsageError(f"counts line {lineno}: expected symbol<TAB>count")
        _add_count(counts, parts[0], parts[1].strip(), f"counts line {lineno}")
    return Multiset(counts)


def resolve_input(args) -> Multiset:
    if args.inline is not None:
        X = parse_inline(args.inline)
    elif args.counts is not None:
        X = parse_counts_file(Path(args.counts).read_text(encoding="utf-8"))
    elif args.bytes is not None:
        X = byte_multiset(Path(args.bytes).read_bytes())
    else:
        raise UsageError("one of --counts, --inline or --bytes is required")
    if not X:
        raise UsageError("the input multiset is empty")
    return X


def _class_json(cls) -> dict:
    out = {"kind": cls.kind.value}
    if cls.base is not None:
        out.update(k=cls.k, base=str(cls.base))
    return out


def cmd_entropy(args, out) -> int:
    X = resolve_input(args)
    w, cls = entropy_w(X), classify_dyadic(X)
    if args.json:
        json.dump({"multiset": str(X), "norm": X.norm, "w": round(w, 9), "class": _class_json(cls)}, out, indent=2)
        out.write("\n")
    else:
        out.write(f"X = {X}\n|X| = {X.norm}\nw = {_fmt(w)}\nclass = {cls}\n")
    return EXIT_OK


def cmd_tree(args, out) -> int:
    X = resolve_input(args)
    t = huffman_tree(X)
    table = code_table(t)
    if args.dot:
        Path(args.dot).write_text(to_dot(t), encoding="utf-8")
    if args.json:
        doc = {
            "multiset": str(X),
            "norm": X.norm,
            "weight": weight(t),
            "w": round(entropy_w(X), 9),
            "tree": t.canonical,
            "codes": table.rows(X),
        }
        json.dump(doc, out, indent=2)
        out.write("\n")
        return EXIT_OK
    out.write(f"X = {X}\n|X| = {X.norm}\nW = {weight(t)}\nw = {_fmt(entropy_w(X))}\n")
    out.write(f"tree = {t.canonical}\n")
    out.write("symbol\tcount\tdepth\tcode\n")
    for row in table.rows(X):
        out.write(f"{row['symbol']}\t{row['count']}\t{row['depth']}\t{row['code'] or '-'}\n")
    return EXIT_OK


def cmd_encode(args, out) -> int:
    data = Path(args.input).read_bytes()
    blob = codec.compress(data)
    Path(args.output).write_bytes(blob)
    out.write(f"{len(data)} bytes -> {len(blob)} bytes\n")
    return EXIT_OK


def cmd_decode(args, out) -> int:
    blob = Path(args.input).read_bytes()
    try:
        data = codec.decompress(blob)
    except CodecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    Path(args.output).write_bytes(data)
    out.write(f"{len(blob)} bytes -> {len(data)} bytes\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    if args.all:
        laws = list(oracle.LAWS)
    elif args.law:
        laws = args.law
    else:
        raise UsageError("give --law ID (repeatable) or --all")
    for law in laws:
        if law not in oracle.LAWS:
            raise UsageError(f"unknown law {law!r}; known: {', '.join(oracle.LAWS)}")
    family = oracle.Family(seed=args.seed)
    reports = []
    for law in laws:
        report = oracle.check_law(law, family)
        reports.append(report)
        if not args.json:
            out.write(report.summary() + "\n")
            for f in report.failures[: args.show]:
                out.write(f"  input: {f.input}\n    expected: {f.expected}\n    actual:   {f.actual}\n")
            if len(report.failures) > args.show:
                out.write(f"  ... {len(report.failures) - args.show} more\n")
            out.flush()
    if args.json:
        out.write(oracle.reports_json(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_converge(args, out) -> int:
    X = resolve_input(args)
    points = oracle.convergence(X, args.n_max, max_product=args.max_product)
    if args.json:
        out.write(oracle.convergence_json(points) + "\n")
    else:
        out.write(oracle.convergence_csv(points))
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    X = resolve_input(args)
    lo, witness = oracle.min_weight(X, max_support=args.max_support)
    W = huffman_weight(X)
    if args.json:
        json.dump({"multiset": str(X), "min_weight": lo, "witness": witness.canonical, "huffman_weight": W},
                  out, indent=2)
        out.write("\n")
    else:
        out.write(f"X = {X}\nmin W = {lo}\nwitness = {witness.canonical}\nhuffman W = {W}\n")
    return EXIT_OK


def _input_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group()
    group.add_argument("--counts", metavar="FILE", help="symbol<TAB>count lines")
    group.add_argument("--inline", metavar="SPEC", help="e.g. a=1,b=1,c=2")
    group.add_argument("--bytes", metavar="FILE", help="count the byte values of a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="huffcat", description="Multisets, Huffman trees and their entropy laws.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="print w(X) and the dyadic classification")
    _input_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("tree", help="build the Huffman tree and its code table")
    _input_flags(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", metavar="FILE", help="also write Graphviz source")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("encode", help="compress a file into the HFC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="expand an HFC1 container")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("check", help="run law checks")
    p.add_argument("--law", action="append", metavar="ID")
    p.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, default=oracle.DEFAULT_SEED)
    p.add_argument("--show", type=int, default=5, metavar="N", help="failures to print per law")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("converge", help="ratios W(X^n) / (n |X|^(n-1))")
    _input_flags(p)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--max-product", type=int, default=oracle.DEFAULT_MAX_PRODUCT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("oracle", help="brute-force minimum weight for a small multiset")
    _input_flags(p)
    p.add_argument("--max-support", type=int, default=oracle.DEFAULT_MAX_SUPPORT)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except TooLarge as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_TOO_LARGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface: ``numsg count|tree|classify|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .chains import (
    chain_children,
    count_infinite_chains,
    in_infinite_chain,
    is_fertile,
    is_type_c,
    left_gcd,
    max_descendant,
)
from .core import NumericalSemigroup
from .errors import ClosureViolation, NotCoprime, SemigroupError
from .export import build_graph
from .formulas import SUITES, run_suite
from .tree import classify_node, enumerate_tree, multiplicity_subtree_root

FILTERS = ("infinitechains",)
DEFAULT_VERIFY_GENUS = {"prime": 30, "m4": 40, "m6": 40, "fertile": 18, "majority": 22}


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    return values


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive(text: str) -> int:
    value = _non_negative(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


# -- count ---------------------------------------------------------------------


def cmd_count(args) -> int:
    if args.multiplicity is not None:
        root = multiplicity_subtree_root(args.multiplicity)
    else:
        root = NumericalSemigroup.natural()
    if args.genus < root.genus:
        rows_counts = None
    else:
        rows_counts = enumerate_tree(root, args.genus, multiplicity=args.multiplicity, jobs=args.jobs)
    filtered = args.filter is not None
    rows = []
    for g in range(args.genus + 1):
        n = rows_counts.count[g] if rows_counts else 0
        row = {"genus": g, "count": n}
        if filtered:
            row["filtered_count"] = rows_counts.chain[g] if rows_counts else 0
        rows.append(row)
    if args.format == "json":
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    return 0


# -- tree ----------------------------------------------------------------------


def cmd_tree(args) -> int:
    m = args.multiplicity
    root = multiplicity_subtree_root(m) if m is not None else NumericalSemigroup.natural()
    if args.trim and m is None:
        raise UsageError("--trim needs --multiplicity")
    if args.genus < root.genus:
        raise UsageError(f"--genus must be at least {root.genus}, the genus of the root")
    if args.from_genus is not None and not root.genus <= args.from_genus <= args.genus:
        raise UsageError(f"--from-genus must lie between {root.genus} and {args.genus}")
    flt = in_infinite_chain if args.filter else None
    fixed = m if args.trim else None
    records = []
    enumerate_tree(root, args.genus, flt, records.append, multiplicity=fixed, jobs=args.jobs)
    graph = build_graph(
        root,
        args.genus,
        flt,
        multiplicity=fixed,
        label_multiplicity=m,
        from_genus=args.from_genus,
        highlights=args.highlight,
        records=records,
    )
    text = graph.render(args.format)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"numsg: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 1
    return 0


# -- classify ------------------------------------------------------------------


def classify_record(s: NumericalSemigroup) -> dict:
    """Every derived field for ``s``; all of it is recomputable from ``gaps``."""
    ordinary = s.is_ordinary()
    in_chain = in_infinite_chain(s)
    if in_chain:
        cc = count_infinite_chains(s)
        chain_count = "infinite" if cc.infinite else cc.n
    else:
        chain_count = "not-in-chain"
    deepest = None
    if not ordinary and not in_chain:
        deepest = list(max_descendant(s).gaps)
    return {
        "gaps": list(s.gaps),
        "genus": s.genus,
        "multiplicity": s.multiplicity,
        "conductor": s.conductor,
        "frobenius": s.frobenius,
        "minimal_generators": s.minimal_generators(),
        "effective_generators": s.effective_generators(),
        "efficacy": len(s.effective_generators()),
        "node_type": classify_node(s),
        "ordinary": ordinary,
        "hyperelliptic": s.is_hyperelliptic(),
        "in_infinite_chain": in_chain,
        "left_gcd": None if ordinary else left_gcd(s),
        "chain_count": chain_count,
        "chain_children": [list(c.gaps) for c in chain_children(s)],
        "max_descendant": deepest,
        "fertile": is_fertile(s),
        "type_c": is_type_c(s),
    }


def cmd_classify(args) -> int:
    if args.gaps is not None:
        s = NumericalSemigroup.from_gaps(args.gaps)
    else:
        s = NumericalSemigroup.from_generators(args.gens)
    sys.stdout.write(json.dumps(classify_record(s), indent=2) + "\n")
    return 0


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        G = args.max_genus if args.max_genus is not None else DEFAULT_VERIFY_GENUS[name]
        report = run_suite(name, G, jobs=args.jobs)
        print(report.render())
        bad = report.first_mismatch()
        if bad is not None:
            print(f"numsg: suite {name} fails first at genus {bad.genus} ({bad.label})", file=sys.stderr)
            status = 1
    return status


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="numsg", description="Explore the tree of numerical semigroups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="per-genus counts")
    c.add_argument("--genus", type=_non_negative, required=True)
    c.add_argument("--multiplicity", type=_positive)
    c.add_argument("--filter", choices=FILTERS)
    c.add_argument("--format", choices=("csv", "json"), default="csv")
    c.add_argument("--jobs", type=_positive, default=1)
    c.set_defaults(func=cmd_count)

    t = sub.add_parser("tree", help="export a subtree (see --format)")
    t.add_argument("--genus", type=_non_negative, required=True)
    t.add_argument("--multiplicity", type=_positive)
    t.add_argument("--filter", choices=FILTERS)
    t.add_argument("--trim", action="store_true", help="drop the ordinary branch that changes multiplicity")
    t.add_argument("--from-genus", type=_non_negative, help="omit the levels above this genus")
    t.add_argument(
        "--highlight",
        action="append",
        metavar="NAME:N",
        help="tau:N, gamma-chain:N or nu-chain:N (repeatable)",
    )
    t.add_argument("--format", choices=("dot", "tikz", "json"), default="dot")
    t.add_argument("--out", help="output path (default: standard output)")
    t.add_argument("--jobs", type=_positive, default=1)
    t.set_defaults(func=cmd_tree)

    k = sub.add_parser("classify", help="describe one semigroup as JSON")
    src = k.add_mutually_exclusive_group(required=True)
    src.add_argument("--gaps", type=_int_list)
    src.add_argument("--gens", type=_int_list)
    k.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", help="check the counting formulas against enumeration")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    v.add_argument("--max-genus", type=_non_negative)
    v.add_argument("--jobs", type=_positive, default=1)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClosureViolation as exc:
        print(f"numsg: not a semigroup: {exc} (witness {exc.a} + {exc.b})", file=sys.stderr)
        return 2
    except NotCoprime as exc:
        print(f"numsg: not a numerical semigroup: {exc}", file=sys.stderr)
        return 2
    except (SemigroupError, UsageError) as exc:
        print(f"numsg: {exc}", file=sys.stderr)
        return 2

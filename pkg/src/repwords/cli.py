"""Command-line front end: one verb per library module.

Exit codes are a stable contract: 0 success, 1 verification or
operation failure, 2 usage error, 3 checkpoint error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .corpus import (
    MalformedCorpusError,
    builtin_corpora,
    format_report,
    load_corpus,
    verify_corpus,
)
from .factoring import FactorBudgetError, factor_quotient
from .families import (
    gen_22_by_length,
    gen_231,
    gen_232,
    gen_241,
    gen_322,
    gen_323,
    gen_331,
    gen_422,
    gen_bijective_square,
    gen_fibonacci_family,
    gen_n21,
)
from .search import (
    CheckpointError,
    SolutionRecord,
    _solution_to_json,
    search_range,
)
from .triples import F_value, Triple, is_admissible
from .words import System, render_word, to_bijective, to_canonical, to_zeckendorf


def _parse_triple(text: str) -> Triple:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected Q,N,L")
    try:
        return Triple(*(int(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _write_solutions(records: list[SolutionRecord], fmt: str) -> None:
    if fmt == "jsonl":
        for rec in records:
            print(json.dumps(_solution_to_json(rec)["solution"]))
        return
    wr = csv.writer(sys.stdout)
    wr.writerow(["q", "n", "l", "b", "y", "c", "w"])
    for rec in records:
        wr.writerow(
            [
                rec.q,
                rec.n,
                rec.l,
                rec.b,
                rec.y,
                rec.c,
                "(" + ",".join(str(d) for d in rec.w.digits) + ")",
            ]
        )


def _cmd_search(args) -> int:
    try:
        t = Triple(args.q, args.n, args.l)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        cp = search_range(
            t,
            args.b_lo,
            args.b_hi,
            args.checkpoint,
            workers=args.workers,
            factor_budget_ms=args.factor_budget,
        )
    except CheckpointError as exc:
        print(f"checkpoint error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_solutions(list(cp.solutions), args.format)
    for b in cp.unresolved:
        print(f"warning: base {b} unresolved (factoring budget exhausted)", file=sys.stderr)
    return 0


_TRIPLE_GENERATORS = {
    (2, 3, 1): gen_231,
    (2, 3, 2): gen_232,
    (3, 2, 2): gen_322,
    (3, 2, 3): gen_323,
    (3, 3, 1): gen_331,
    (2, 4, 1): gen_241,
    (4, 2, 2): gen_422,
}


def _cmd_generate(args) -> int:
    t: Triple = args.triple
    count = args.count
    if count < 1:
        print("error: --count must be >= 1", file=sys.stderr)
        return 2

    if args.system == "bijective":
        # one square family member per base, at the requested word length
        if (t.q, t.n) != (2, 2) or t.l < 2:
            print(
                "error: bijective generation needs --triple 2,2,L with L >= 2",
                file=sys.stderr,
            )
            return 2
        rows = [gen_bijective_square(b, t.l) for b in range(2, count + 2)]
        if args.format == "jsonl":
            for b, (y, w) in zip(range(2, count + 2), rows):
                print(
                    json.dumps(
                        {
                            "b": str(b),
                            "l": str(t.l),
                            "y": str(y),
                            "w": [str(d) for d in w.digits],
                        }
                    )
                )
        else:
            wr = csv.writer(sys.stdout)
            wr.writerow(["b", "l", "y", "w"])
            for b, (y, w) in zip(range(2, count + 2), rows):
                wr.writerow([b, t.l, y, "(" + ",".join(str(d) for d in w.digits) + ")"])
        return 0

    if args.system == "fibonacci":
        if (t.q, t.n) != (2, 2):
            print("error: fibonacci generation needs --triple 2,2,L", file=sys.stderr)
            return 2
        rows = [gen_fibonacci_family(k) for k in range(1, count + 1)]
        if args.format == "jsonl":
            for k, (y, w) in enumerate(rows, start=1):
                print(
                    json.dumps(
                        {
                            "param": str(k),
                            "y": str(y),
                            "w": "".join(str(d) for d in w.digits),
                        }
                    )
                )
        else:
            wr = csv.writer(sys.stdout)
            wr.writerow(["param", "y", "w"])
            for k, (y, w) in enumerate(rows, start=1):
                wr.writerow([k, y, "".join(str(d) for d in w.digits)])
        return 0

    key = (t.q, t.n, t.l)
    if (t.q, t.n) == (2, 2):
        records = gen_22_by_length(t.l, count)
    elif key in _TRIPLE_GENERATORS:
        records = _TRIPLE_GENERATORS[key](count)
    elif (t.n, t.l) == (2, 1):
        records = gen_n21(t.q, count)
    else:
        print(
            f"error: no infinite family exists for triple {t.q},{t.n},{t.l}",
            file=sys.stderr,
        )
        return 2
    _write_solutions(records, args.format)
    return 0


def _cmd_classify(args) -> int:
    try:
        t = Triple(args.q, args.n, args.l)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    verdict = "admissible" if is_admissible(t) else "inadmissible"
    print(f"{verdict} F={F_value(t)}")
    return 0


def _cmd_verify(args) -> int:
    names = [args.corpus] if args.corpus else list(builtin_corpora())
    failed = False
    try:
        for name in names:
            corpus = load_corpus(name)
            report = verify_corpus(corpus, pattern_n_max=args.pattern_n_max)
            print(format_report(report))
            failed = failed or not report.ok
    except MalformedCorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 1 if failed else 0


def _cmd_factor(args) -> int:
    try:
        f = factor_quotient(args.b, args.n, args.l, budget_ms=args.budget)
    except FactorBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(" * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in f.factors))
    return 0


def _cmd_repr(args) -> int:
    system = System.ZECKENDORF if args.system == "fibonacci" else System(args.system)
    if args.x < 0:
        print("error: --x must be >= 0", file=sys.stderr)
        return 2
    if system is System.ZECKENDORF:
        if args.base not in (None, 2):
            print("error: the Fibonacci system has no base parameter", file=sys.stderr)
            return 2
        word = to_zeckendorf(args.x)
    else:
        if args.base is None or args.base < 2:
            print("error: --base must be >= 2", file=sys.stderr)
            return 2
        if system is System.CANONICAL:
            word = to_canonical(args.x, args.base)
        else:
            word = to_bijective(args.x, args.base)
    print(render_word(word))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repwords",
        description="find, generate, and verify powers whose digits repeat a word",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="scan a base range for solutions of one triple")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--b-lo", type=int, required=True)
    p.add_argument("--b-hi", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--factor-budget", type=int, default=None, metavar="MS")
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("generate", help="emit members of an infinite solution family")
    p.add_argument("--triple", type=_parse_triple, required=True, metavar="Q,N,L")
    p.add_argument("--count", type=int, required=True, metavar="K")
    p.add_argument(
        "--system",
        choices=["canonical", "bijective", "fibonacci"],
        default="canonical",
    )
    p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("classify", help="admissibility and the sign witness F")
    p.add_argument("q", type=int)
    p.add_argument("n", type=int)
    p.add_argument("l", type=int)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("verify", help="recheck a solution table row by row")
    p.add_argument("--corpus", default=None, help="bundled name or CSV path")
    p.add_argument("--pattern-n-max", type=int, default=50)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("factor", help="factor (b^(n*l)-1)/(b^l-1)")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, metavar="MS")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("repr", help="digit word of an integer in one system")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--base", type=int, default=None)
    p.add_argument(
        "--system",
        choices=["canonical", "bijective", "zeckendorf", "fibonacci"],
        default="canonical",
    )
    p.set_defaults(func=_cmd_repr)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 word or order parse error, 2 invalid presentation,
3 internal chain failure, 4 budget exceeded, 5 invariant violation,
64 usage error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .automata import (
    AcceptorMismatch, GEODESIC, SHORTLEX, StateBudgetExceeded, build_acceptor,
    dfa_count_by_length,
)
from .geodesic import equal_in_G, fftp_witness, geodesic_length, is_geodesic
from .oracle import BudgetExceeded
from .reducer import ChainError, rho, rho_trace
from .sweeps import SUITES, run_suite
from .words import LetterOrder, Presentation, PresentationError, WordParseError

EXIT_PARSE = 1
EXIT_PRESENTATION = 2
EXIT_CHAIN = 3
EXIT_BUDGET = 4
EXIT_INVARIANT = 5
EXIT_USAGE = 64

BUNDLED = ("da3.json", "g333.json", "g345.json")


class _Parser(argparse.ArgumentParser):
    # argparse's own exit code 2 would collide with "invalid presentation"
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_presentation(path: str) -> Presentation:
    """Load a presentation file; bundled fixture names resolve to package data."""
    p = Path(path)
    if not p.exists() and p.name == path and path in BUNDLED:
        text = resources.files("artin_shortlex").joinpath("data", path).read_text()
        return Presentation.from_json(json.loads(text))
    return Presentation.load(p)


def _apply_order(pres: Presentation, text: Optional[str]) -> Presentation:
    if not text:
        return pres
    letters = pres.parse_word(text)
    if sorted(letters) != list(range(2 * pres.n)):
        raise WordParseError("--order must list every letter exactly once")
    return pres.with_order(LetterOrder.from_letters(letters))


def _emit(args, value, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(value, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def cmd_normalize(args, pres: Presentation) -> int:
    word = args.word_opt if args.word_opt is not None else (args.word or "")
    w = pres.parse_word(word)
    if args.trace:
        tr = rho_trace(w, pres)
        print(tr.dumps(pres))
    else:
        r = rho(w, pres)
        _emit(args, {"input": pres.format_word(w), "normal_form": pres.format_word(r)},
              pres.format_word(r))
    return 0


def cmd_equal(args, pres: Presentation) -> int:
    u, v = pres.parse_word(args.u), pres.parse_word(args.v)
    eq = equal_in_G(u, v, pres)
    _emit(args, {"u": pres.format_word(u), "v": pres.format_word(v), "equal": eq},
          "true" if eq else "false")
    return 0


def cmd_length(args, pres: Presentation) -> int:
    w = pres.parse_word(args.word)
    n = geodesic_length(w, pres)
    _emit(args, {"word": pres.format_word(w), "length": n}, str(n))
    return 0


def cmd_geodesic(args, pres: Presentation) -> int:
    w = pres.parse_word(args.word)
    g = is_geodesic(w, pres)
    _emit(args, {"word": pres.format_word(w), "geodesic": g}, "true" if g else "false")
    return 0


def cmd_fftp(args, pres: Presentation) -> int:
    w = pres.parse_word(args.word)
    wit = fftp_witness(w, pres)
    if wit is None:
        _emit(args, {"word": pres.format_word(w), "geodesic": True, "witness": None}, "geodesic")
    else:
        _emit(args, {"word": pres.format_word(w), "geodesic": False, "witness": wit.to_json(pres)},
              f"{pres.format_word(wit.word)} {wit.distance}")
    return 0


def cmd_acceptor(args, pres: Presentation) -> int:
    dfa = build_acceptor(pres, args.kind, max_states=args.max_states, verify_depth=args.depth)
    counts = dfa_count_by_length(dfa, args.depth)
    if args.out:
        fmt = args.format or ("dot" if args.out.endswith(".dot") else "json")
        text = dfa.to_dot(pres) if fmt == "dot" else json.dumps(dfa.to_json(pres), ensure_ascii=False)
        Path(args.out).write_text(text)
    for w in args.accepts or ():
        word = pres.parse_word(w)
        print(f"{pres.format_word(word)}: {'accepted' if dfa.accepts(word) else 'rejected'}",
              file=sys.stderr)
    _emit(args, {"kind": args.kind, "states": dfa.n_states, "counts": counts,
                 "verified_depth": args.depth},
          f"states {dfa.n_states}\ncounts {' '.join(map(str, counts))}")
    return 0


def cmd_verify(args, pres: Presentation) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(name, pres, args.radius) for name in names]
    out = {"radius": args.radius, "ok": all(r.ok for r in reports),
           "suites": [r.to_json() for r in reports]}
    print(json.dumps(out, ensure_ascii=False, sort_keys=True, default=str))
    return 0 if out["ok"] else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artin-shortlex",
                     description="Shortlex normal forms and geodesics in Artin groups of large type.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("-p", "--presentation", required=True,
                       help="presentation JSON (bundled: da3.json, g333.json, g345.json)")
        p.add_argument("--order", help='letter order, e.g. "a A b B"')
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = common("normalize", "print the shortlex normal form")
    p.add_argument("word", nargs="?", help="word text, e.g. \"a b B a^-2\"")
    p.add_argument("-w", "--word", dest="word_opt", help="word text (alternative to positional)")
    p.add_argument("--trace", action="store_true", help="print the JSON reduction trace")
    p.set_defaults(func=cmd_normalize)

    p = common("equal", "decide equality of two words")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_equal)

    p = common("length", "geodesic length of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_length)

    p = common("geodesic", "test whether a word is geodesic")
    p.add_argument("word")
    p.set_defaults(func=cmd_geodesic)

    p = common("fftp", "shorter fellow-travelling word for a non-geodesic")
    p.add_argument("word")
    p.set_defaults(func=cmd_fftp)

    p = common("acceptor", "build, verify and export an acceptor")
    p.add_argument("--kind", choices=(SHORTLEX, GEODESIC), default=SHORTLEX)
    p.add_argument("--depth", type=int, default=6, help="verification depth")
    p.add_argument("--max-states", type=int, default=100_000)
    p.add_argument("--out", help="output file (.dot or .json)")
    p.add_argument("--format", choices=("dot", "json"), help="override the format implied by --out")
    p.add_argument("--accepts", action="append", metavar="WORD",
                   help="report acceptance of WORD on stderr (repeatable)")
    p.set_defaults(func=cmd_acceptor)

    p = common("verify", "run the exhaustive invariant sweeps")
    p.add_argument("--radius", type=int, default=4)
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "depth", 1) < 0 or getattr(args, "radius", 1) < 0:
        print("error: depth and radius must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        pres = _apply_order(load_presentation(args.presentation), args.order)
        return args.func(args, pres)
    except PresentationError as exc:
        print(f"error: invalid presentation: {exc}", file=sys.stderr)
        return EXIT_PRESENTATION
    except WordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChainError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_CHAIN
    except (StateBudgetExceeded, BudgetExceeded) as exc:
        print(f"error: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AcceptorMismatch as exc:
        print(f"error: acceptor verification failed: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())

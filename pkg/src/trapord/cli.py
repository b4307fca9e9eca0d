"""Command line front end.

Exit codes: 0 pass (SAT, forced, all claims hold), 1 fail (UNSAT, not forced,
some claim fails), 2 inconclusive (budget exhausted), 3 input error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from . import __version__
from .autonomy import ClosureLimitExceeded, autonomous_sets, closure_report
from .constraints import Mode, compile_system, parse_fact
from .corpus import NAMES, CorpusError, load_corpus
from .poset import Poset, PosetError, format_poset, load_poset, make_poset
from .representation import (
    RepresentationError,
    format_representation,
    induced_order,
    is_proper,
    is_unit,
    load_representation,
    represents,
    save_representation,
    unit_defect,
)
from .solver import Inconclusive, SolveOptions, forced_with_stats, solve
from .svg import render_svg, to_svg
from .verify import CLAIMS, load_all, verify_paper

EXIT_PASS, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3

log = logging.getLogger("trapord")


class InputError(Exception):
    pass


def random_poset(n: int, density: float, rng: random.Random) -> Poset:
    """Random order: each pair i<j of a hidden linear order is kept with ``density``."""
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return make_poset(names, pairs)


def _poset(source: str, seed: int | None) -> Poset:
    """A corpus name, ``random:N[:DENSITY]``, or a path to a .pos file."""
    if source in NAMES:
        return load_corpus(source).poset
    if source.startswith("random:"):
        parts = source.split(":")
        try:
            n = int(parts[1])
            density = float(parts[2]) if len(parts) > 2 else 0.4
        except (IndexError, ValueError) as exc:
            raise InputError(f"bad random poset spec {source!r}") from exc
        return random_poset(n, density, random.Random(seed))
    path = Path(source)
    if not path.exists():
        raise InputError(f"no such poset file or corpus name: {source}")
    return load_poset(path)


def _options(args) -> SolveOptions:
    return SolveOptions(
        budget_nodes=args.budget_nodes,
        budget_secs=args.budget_secs,
        threads=args.threads,
        symmetry_breaking=getattr(args, "symmetry_breaking", False),
    )


def _fmt_set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


# -- subcommands --------------------------------------------------------------


def cmd_check_rep(args) -> int:
    rep = load_representation(args.rep)
    print(f"elements: {len(rep)}")
    print(f"proper: {is_proper(rep)}")
    print(f"unit: {is_unit(rep)} (defect {unit_defect(rep)})")
    ok = True
    if args.poset:
        p = _poset(args.poset, args.seed)
        if set(p.elements) != set(rep.elements):
            raise InputError("representation and poset have different elements")
        ok = represents(rep, p)
        print(f"represents {args.poset}: {ok}")
    else:
        sys.stdout.write(format_poset(induced_order(rep), hasse=True))
    if args.require_proper and not is_proper(rep):
        ok = False
    if args.require_unit and not is_unit(rep):
        ok = False
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_solve(args) -> int:
    p = _poset(args.poset, args.seed)
    cs = compile_system(p, args.mode, equality_branch=not args.no_equality_branch)
    res = solve(cs, _options(args))
    print(f"status={res.status} nodes={res.nodes} depth={res.max_depth} "
          f"lp={res.lp_calls} ms={int(res.elapsed * 1000)}")
    if res.inconclusive:
        print(f"reason: {res.reason}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if res.sat:
        if args.witness:
            save_representation(res.witness, args.witness)
        else:
            sys.stdout.write(format_representation(res.witness))
        if args.svg:
            render_svg(res.witness, args.svg, title=f"{args.poset} ({args.mode})")
        return EXIT_PASS
    return EXIT_FAIL


def cmd_forced(args) -> int:
    p = _poset(args.poset, args.seed)
    try:
        facts = [parse_fact(f) for f in [args.fact, *args.or_fact]]
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    try:
        ok, res = forced_with_stats(p, args.mode, facts, options=_options(args))
    except Inconclusive as exc:
        print(f"forced=inconclusive reason={exc}")
        return EXIT_INCONCLUSIVE
    print(f"forced={'true' if ok else 'false'} nodes={res.nodes} ms={int(res.elapsed * 1000)}")
    if not ok and res.witness is not None and args.counterexample:
        save_representation(res.witness, args.counterexample)
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_modules(args) -> int:
    p = _poset(args.poset, args.seed)
    for s in autonomous_sets(p, nontrivial_only=args.nontrivial):
        print(_fmt_set(s))
    return EXIT_PASS


_CHECKS = {
    "proper-unsat": (Mode.PROPER, False),
    "unit-unsat": (Mode.UNIT, False),
    "proper-sat": (Mode.PROPER, True),
    "unit-sat": (Mode.UNIT, True),
    "any-sat": (Mode.ANY, True),
}


def cmd_invariance(args) -> int:
    p = _poset(args.poset, args.seed)
    opts = _options(args)
    checks = args.check or ["proper-unsat"]

    def checker(q: Poset) -> bool:
        for name in checks:
            mode, want_sat = _CHECKS[name]
            res = solve(compile_system(q, mode), opts)
            if res.inconclusive:
                raise Inconclusive(res.reason, res)
            if res.sat != want_sat:
                return False
        return True

    try:
        report = closure_report(p, checker, limit=args.limit)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}")
        return EXIT_INCONCLUSIVE
    for k, (q, iso, ok) in enumerate(report):
        print(f"member={k} isomorphic={str(iso).lower()} check={'pass' if ok else 'fail'}")
    holds = all(ok for _, _, ok in report)
    print(f"orders={len(report)} property={'holds' if holds else 'fails'} checks={','.join(checks)}")
    return EXIT_PASS if holds else EXIT_FAIL


def cmd_corpus(args) -> int:
    entry = load_corpus(args.name)
    out = sys.stdout
    if args.emit == "poset":
        text = format_poset(entry.poset, hasse=args.hasse)
    elif entry.sample is None:
        raise InputError(f"no sample representation for {args.name}")
    elif args.emit == "rep":
        text = format_representation(entry.sample)
    else:
        text = to_svg(entry.sample, title=args.name)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_PASS


def cmd_verify(args) -> int:
    corpus = load_all(args.corpus_dir)
    only = set(args.claim) if args.claim else None

    def progress(rec):
        if args.verbose:
            print(f"{rec.status:12} {rec.claim} ({rec.ms} ms)", file=sys.stderr)

    report = verify_paper(_options(args), corpus, only, progress)
    if args.format in ("text", "both"):
        sys.stdout.write(report.text())
    if args.format in ("lines", "both"):
        sys.stdout.write(report.lines())
    return report.exit_code


def cmd_render(args) -> int:
    rep = load_representation(args.rep)
    render_svg(rep, args.out, title=args.title)
    return EXIT_PASS


# -- parser -------------------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    # flags accepted both before and after the subcommand; the subcommand copy
    # must not reset values given up front, hence SUPPRESS defaults there
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=d(1), help="worker processes for the search")
    common.add_argument("--seed", type=int, default=d(0), help="seed for random:N posets")
    common.add_argument("--budget-nodes", type=int, default=d(None))
    common.add_argument("--budget-secs", type=float, default=d(None))
    common.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(suppress=True)
    parser = argparse.ArgumentParser(
        prog="trapord", parents=[_common(suppress=False)],
        description="Trapezoid orders: representations, representability search, modules.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    modes = [m.value for m in Mode]

    p = sub.add_parser("check-rep", parents=[common], help="validate a .trep representation")
    p.add_argument("--rep", required=True)
    p.add_argument("--poset", help="poset file or corpus name to compare against")
    p.add_argument("--require-proper", action="store_true")
    p.add_argument("--require-unit", action="store_true")
    p.set_defaults(func=cmd_check_rep)

    p = sub.add_parser("solve", parents=[common], help="decide representability")
    p.add_argument("--poset", required=True)
    p.add_argument("--mode", choices=modes, default="any")
    p.add_argument("--witness", help="write the witness to this .trep file")
    p.add_argument("--svg", help="draw the witness to this file")
    p.add_argument("--no-equality-branch", action="store_true",
                   help="drop the all-equal literal in proper mode (not sound for UNSAT)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("forced", parents=[common], help="is a fact true in every representation?")
    p.add_argument("--poset", required=True)
    p.add_argument("--mode", choices=modes, default="any")
    p.add_argument("--fact", required=True, help='e.g. "R(E)<L(2),L(2)<=R(2)"')
    p.add_argument("--or-fact", action="append", default=[], help="alternative fact (repeatable)")
    p.add_argument("--symmetry-breaking", action="store_true",
                   help="only valid when the facts come in baseline-mirrored pairs")
    p.add_argument("--counterexample", help="write a representation violating the facts here")
    p.set_defaults(func=cmd_forced)

    p = sub.add_parser("modules", parents=[common], help="list autonomous sets")
    p.add_argument("--poset", required=True)
    p.add_argument("--nontrivial", action="store_true")
    p.set_defaults(func=cmd_modules)

    p = sub.add_parser("invariance", parents=[common], help="check a property on the reversal closure")
    p.add_argument("--poset", required=True)
    p.add_argument("--check", action="append", choices=sorted(_CHECKS))
    p.add_argument("--limit", type=int, default=10_000)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("corpus", parents=[common], help="emit a built-in order")
    p.add_argument("--name", required=True, choices=NAMES)
    p.add_argument("--emit", choices=["poset", "rep", "svg"], default="poset")
    p.add_argument("--hasse", action="store_true", help="only covering pairs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce every claim about the corpus")
    p.add_argument("--corpus-dir", help="directory overriding the built-in data files")
    p.add_argument("--claim", action="append", choices=[c for c, _, _ in CLAIMS])
    p.add_argument("--format", choices=["text", "lines", "both"], default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="draw a .trep file as SVG")
    p.add_argument("--rep", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--title")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, PosetError, RepresentationError, CorpusError, ClosureLimitExceeded,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""One-shot reproduction of every claim about the three built-in orders."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .autonomy import autonomous_sets, reversal_closure
from .constraints import Mode, compile_system, le
from .corpus import JAW_BOTTOM_CHAIN, JAW_TOP_CHAIN, CorpusEntry, load_corpus
from .poset import is_isomorphic
from .representation import is_proper, represents
from .solver import (
    Inconclusive,
    SolveOptions,
    certify_unit_impossible_by_nesting,
    forced_with_stats,
    solve,
)

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# (id, anchor, mode); run in this order
CLAIMS = (
    ("jaw-sat", "the jaw order has a trapezoid representation", "any"),
    ("jaw-lemma", "every representation follows one of the two mirrored jaw chains", "any"),
    ("jaw-chain-alone", "neither mirrored chain is forced on its own", "any"),
    ("improper-sat", "the improper order has a trapezoid representation", "any"),
    ("improper-nesting", "N's intervals lie inside 2's on both baselines", "any"),
    ("improper-not-proper", "the improper order has no proper representation", "proper"),
    ("pnu-proper", "the pnu order has a proper representation", "proper"),
    ("pnu-not-unit", "the pnu order has no unit representation", "unit"),
    ("pnu-nesting-count", "squeezing x<y<z into 2 and 3 rules out unit areas", "unit"),
    ("improper-modules", "non-trivial modules are {b,c} and {x,y}", "-"),
    ("pnu-modules", "non-trivial modules are {b,c},{f,g},{x,y},{y,z},{x,y,z}", "-"),
    ("improper-invariance", "every reversal keeps the order improper", "proper"),
    ("pnu-invariance", "every reversal keeps the order proper but not unit", "proper,unit"),
)


@dataclass
class ClaimRecord:
    claim: str
    anchor: str
    mode: str
    status: str
    nodes: int = 0
    ms: int = 0
    detail: str = ""

    def line(self) -> str:
        return f"claim={self.claim} status={self.status} nodes={self.nodes} ms={self.ms}"


@dataclass
class VerificationReport:
    records: list[ClaimRecord] = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {r.status for r in self.records}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    @property
    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[self.status]

    def lines(self) -> str:
        return "".join(r.line() + "\n" for r in self.records)

    def text(self) -> str:
        width = max(len(r.claim) for r in self.records) if self.records else 0
        out = []
        for r in self.records:
            out.append(f"{r.status.upper():12} {r.claim:{width}}  {r.anchor}  [{r.mode}]")
            if r.detail:
                out.extend("    " + d for d in r.detail.splitlines())
        out.append(f"overall: {self.status}")
        return "\n".join(out) + "\n"


class _Counter:
    def __init__(self):
        self.nodes = 0

    def add(self, res):
        self.nodes += res.nodes
        return res


def _solve(entry: CorpusEntry, mode, opts: SolveOptions, counter: _Counter, extra=(), eq_branch=True):
    res = counter.add(solve(compile_system(entry.poset, mode, extra, eq_branch), opts))
    if res.inconclusive:
        raise Inconclusive(res.reason, res)
    return res


def _forced(entry, mode, facts, opts, counter):
    ok, res = forced_with_stats(entry.poset, mode, facts, options=opts)
    counter.add(res)
    return ok


def _claims(corpus: dict[str, CorpusEntry], opts: SolveOptions) -> dict[str, Callable]:
    jaw, imp, pnu = corpus["jaw"], corpus["improper"], corpus["pnu"]

    def jaw_sat(c):
        res = _solve(jaw, Mode.ANY, opts, c)
        return res.sat and represents(res.witness, jaw.poset), ""

    def jaw_lemma(c):
        return _forced(jaw, Mode.ANY, [JAW_BOTTOM_CHAIN, JAW_TOP_CHAIN], opts, c), ""

    def jaw_alone(c):
        bottom = _forced(jaw, Mode.ANY, [JAW_BOTTOM_CHAIN], opts, c)
        top = _forced(jaw, Mode.ANY, [JAW_TOP_CHAIN], opts, c)
        return not bottom and not top, f"bottom alone forced={bottom}, top alone forced={top}"

    def improper_sat(c):
        res = _solve(imp, Mode.ANY, opts, c)
        return res.sat and represents(res.witness, imp.poset), ""

    def improper_nesting(c):
        fact = [le("l", "2", "l", "N"), le("r", "N", "r", "2"),
                le("L", "2", "L", "N"), le("R", "N", "R", "2")]
        return _forced(imp, Mode.ANY, [fact], opts, c), ""

    def improper_not_proper(c):
        return _solve(imp, Mode.PROPER, opts, c).unsat, ""

    def pnu_proper(c):
        res = _solve(pnu, Mode.PROPER, opts, c)
        ok = res.sat and represents(res.witness, pnu.poset) and is_proper(res.witness)
        return ok, ""

    def pnu_not_unit(c):
        return _solve(pnu, Mode.UNIT, opts, c).unsat, ""

    def pnu_count(c):
        inner, bottom, top = pnu.nesting
        rep = certify_unit_impossible_by_nesting(pnu.poset, inner, bottom, top, options=opts)
        c.nodes += rep.nodes
        agrees = _solve(pnu, Mode.UNIT, opts, c).unsat == rep.ok
        return rep.ok and agrees, str(rep)

    def modules(entry):
        def run(c):
            got = autonomous_sets(entry.poset)
            want = list(entry.autonomous)
            shown = ", ".join("{" + ",".join(sorted(s)) + "}" for s in got)
            return set(got) == set(want) and len(got) == len(want), f"found {shown}"
        return run

    def invariance(entry, check):
        def run(c):
            members = reversal_closure(entry.poset)
            iso = all(is_isomorphic(q, entry.poset) for q in members)
            ok = all(check(q, c) for q in members)
            return iso and ok, f"{len(members)} orders in the reversal closure, all isomorphic={iso}"
        return run

    def unsat_in(mode):
        def check(q, c):
            res = c.add(solve(compile_system(q, mode), opts))
            if res.inconclusive:
                raise Inconclusive(res.reason, res)
            return res.unsat
        return check

    def proper_not_unit(q, c):
        return not unsat_in(Mode.PROPER)(q, c) and unsat_in(Mode.UNIT)(q, c)

    return {
        "jaw-sat": jaw_sat,
        "jaw-lemma": jaw_lemma,
        "jaw-chain-alone": jaw_alone,
        "improper-sat": improper_sat,
        "improper-nesting": improper_nesting,
        "improper-not-proper": improper_not_proper,
        "pnu-proper": pnu_proper,
        "pnu-not-unit": pnu_not_unit,
        "pnu-nesting-count": pnu_count,
        "improper-modules": modules(imp),
        "pnu-modules": modules(pnu),
        "improper-invariance": invariance(imp, unsat_in(Mode.PROPER)),
        "pnu-invariance": invariance(pnu, proper_not_unit),
    }


def load_all(directory: str | Path | None = None) -> dict[str, CorpusEntry]:
    return {name: load_corpus(name, directory) for name in ("jaw", "improper", "pnu")}


def verify_paper(
    options: SolveOptions | None = None,
    corpus: dict[str, CorpusEntry] | None = None,
    only: set[str] | None = None,
    progress: Callable[[ClaimRecord], None] | None = None,
) -> VerificationReport:
    """Run every claim in order.  Corpus errors propagate before any claim runs."""
    opts = options or SolveOptions()
    corpus = corpus if corpus is not None else load_all()
    runners = _claims(corpus, opts)
    report = VerificationReport()
    for claim, anchor, mode in CLAIMS:
        if only is not None and claim not in only:
            continue
        counter = _Counter()
        start = time.monotonic()
        try:
            ok, detail = runners[claim](counter)
            status = PASS if ok else FAIL
        except Inconclusive as exc:
            status, detail = INCONCLUSIVE, f"budget exhausted: {exc}"
        ms = int((time.monotonic() - start) * 1000)
        rec = ClaimRecord(claim, anchor, mode, status, counter.nodes, ms, detail)
        report.records.append(rec)
        if progress:
            progress(rec)
    return report

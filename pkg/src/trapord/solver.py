"""Complete search for trapezoid representations.

The search is DPLL over the disjunctive clauses of a
:class:`~trapord.constraints.ConstraintSystem`.  A node's partial
assignment is a set of endpoint comparisons kept transitively closed as two
bitset matrices (``le`` and ``lt``); a conflict is a cycle through a strict
edge.  In unit mode every node that survives that test is also checked by
an exact rational LP.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import lp
from .constraints import (
    ENDPOINTS,
    Atom,
    Clause,
    ConstraintSystem,
    Mode,
    check_fact_elements,
    compile_system,
    negate_conjunction,
)
from .poset import Poset
from .representation import (
    Trapezoid,
    TrapezoidRepresentation,
    is_proper,
    is_unit,
    represents,
)

log = logging.getLogger(__name__)

SAT = "sat"
UNSAT = "unsat"
INCONCLUSIVE = "inconclusive"


class Inconclusive(RuntimeError):
    """The node or time budget ran out before the search finished."""

    def __init__(self, message: str, result: "SolveResult | None" = None):
        super().__init__(message)
        self.result = result


class WitnessError(AssertionError):
    """A constructed witness failed independent validation (a solver bug)."""


@dataclass
class SolveOptions:
    budget_nodes: int | None = None
    budget_secs: float | None = None
    symmetry_breaking: bool = False
    threads: int = 1
    lp_every_node: bool = True


@dataclass
class SolveResult:
    status: str
    witness: TrapezoidRepresentation | None = None
    nodes: int = 0
    max_depth: int = 0
    elapsed: float = 0.0
    lp_calls: int = 0
    reason: str = ""

    @property
    def sat(self) -> bool:
        return self.status == SAT

    @property
    def unsat(self) -> bool:
        return self.status == UNSAT

    @property
    def inconclusive(self) -> bool:
        return self.status == INCONCLUSIVE


class _OutOfBudget(Exception):
    pass


def _triples(atom: Atom, var) -> list[tuple[int, int, bool]]:
    u, v = var(atom.left.kind, atom.left.elem), var(atom.right.kind, atom.right.elem)
    if atom.kind == "lt":
        return [(u, v, True)]
    if atom.kind == "le":
        return [(u, v, False)]
    return [(u, v, False), (v, u, False)]


@dataclass
class _Stats:
    nodes: int = 0
    max_depth: int = 0
    lp_calls: int = 0
    start: float = field(default_factory=time.monotonic)


class _Search:
    def __init__(self, cs: ConstraintSystem, opts: SolveOptions):
        self.cs = cs
        self.opts = opts
        els = cs.elements
        self.idx = {e: i for i, e in enumerate(els)}
        self.nv = 4 * len(els)
        var = self.var
        self.hard = [t for a in cs.hard for t in _triples(a, var)]
        comp = {e: len(cs.poset.successors(e)) + len(cs.poset.predecessors(e)) for e in els}

        def weight(clause: Clause) -> int:
            names = {a.left.elem for lit in clause for a in lit} | {
                a.right.elem for lit in clause for a in lit
            }
            return -sum(comp[n] for n in names)

        base = sorted(range(len(cs.clauses)), key=lambda i: (weight(cs.clauses[i]), i))
        ordered = list(cs.extra) + [cs.clauses[i] for i in base]
        self.clauses = [
            [[t for a in lit for t in _triples(a, var)] for lit in clause] for clause in ordered
        ]
        self.clause_atoms = ordered
        self.n_extra = len(cs.extra)
        # incomparability clauses: literal 0 lives on the top baseline, 1 on the bottom
        self.bottom_literal = {}
        for i, clause in enumerate(ordered):
            if len(clause) == 2 and all(len(lit) == 1 for lit in clause):
                kinds = [lit[0].left.kind for lit in clause]
                if kinds == ["L", "l"]:
                    self.bottom_literal[i] = 1
        self.units = [
            tuple(var(k, u.elem) for k in ENDPOINTS) for u in cs.unit_equations
        ]
        self.stats = _Stats()

    def var(self, kind: str, elem: str) -> int:
        return 4 * self.idx[elem] + ENDPOINTS.index(kind)

    # -- closure maintenance ------------------------------------------------

    def _add(self, le: list[int], lt: list[int], u: int, v: int, strict: bool) -> bool:
        bu, bv = 1 << u, 1 << v
        if strict:
            if lt[u] & bv:
                return True
            if le[v] & bu:
                return False
        else:
            if le[u] & bv:
                return True
            if lt[v] & bu:
                return False
        lev, ltv = le[v], lt[v]
        for a in range(self.nv):
            if le[a] & bu:
                le[a] |= lev
                if strict or lt[a] & bu:
                    lt[a] |= lev
                else:
                    lt[a] |= ltv
        return True

    def _assert(self, le, lt, triples) -> bool:
        for u, v, s in triples:
            if not self._add(le, lt, u, v, s):
                return False
        return True

    @staticmethod
    def _status(le, lt, lit) -> int:
        """1 entailed, -1 refuted, 0 open."""
        entailed = True
        for u, v, s in lit:
            if s:
                if le[v] >> u & 1:
                    return -1
                if not lt[u] >> v & 1:
                    entailed = False
            else:
                if lt[v] >> u & 1:
                    return -1
                if not le[u] >> v & 1:
                    entailed = False
        return 1 if entailed else 0

    def _propagate(self, le, lt, open_idx: list[int]):
        """Unit propagation; returns ``[(clause, live literal indices)]`` or None."""
        clauses = self.clauses
        while True:
            changed = False
            remaining = []
            for ci in open_idx:
                live = []
                done = False
                for li, lit in enumerate(clauses[ci]):
                    st = self._status(le, lt, lit)
                    if st == 1:
                        done = True
                        break
                    if st == 0:
                        live.append(li)
                if done:
                    continue
                if not live:
                    return None
                if len(live) == 1:
                    if not self._assert(le, lt, clauses[ci][live[0]]):
                        return None
                    changed = True
                    continue
                remaining.append((ci, live))
            if not changed:
                return remaining
            open_idx = [ci for ci, _ in remaining]

    # -- LP for unit mode -----------------------------------------------------

    def _lp(self, le, lt):
        """Maximise the minimum strict gap; returns coordinates or None."""
        self.stats.lp_calls += 1
        nv = self.nv
        rep = list(range(nv))
        for a in range(nv):
            for b in range(a):
                if le[a] >> b & 1 and le[b] >> a & 1:
                    rep[a] = rep[b]
                    break
        reps = sorted(set(rep))
        col = {r: i for i, r in enumerate(reps)}
        mask = 0
        for r in reps:
            mask |= 1 << r
        rows = []
        for a in reps:
            succ = le[a] & mask & ~(1 << a)
            b_iter = succ
            while b_iter:
                low = b_iter & -b_iter
                b = low.bit_length() - 1
                b_iter ^= low
                strict = bool(lt[a] >> b & 1)
                # skip edges implied through an intermediate class
                mids = succ & ~(1 << b)
                redundant = False
                m_iter = mids
                while m_iter:
                    lowm = m_iter & -m_iter
                    c = lowm.bit_length() - 1
                    m_iter ^= lowm
                    if le[c] >> b & 1 and (not strict or lt[a] >> c & 1 or lt[c] >> b & 1):
                        redundant = True
                        break
                if redundant:
                    continue
                row = {col[a]: 1, col[b]: -1}
                if strict:
                    row[len(reps)] = 1
                rows.append((row, 0))
        delta = len(reps)
        rows.append(({delta: 1}, 1))
        eqs = []
        for vL, vR, vl, vr in self.units:
            row: dict[int, int] = {}
            for v, s in ((vR, 1), (vL, -1), (vr, 1), (vl, -1)):
                c = col[rep[v]]
                row[c] = row.get(c, 0) + s
            eqs.append(({k: s for k, s in row.items() if s}, 2))
        res = lp.maximize({delta: 1}, len(reps) + 1, rows, eqs)
        if res.status != lp.OPTIMAL or res.value <= 0:
            return None
        return [res.x[col[rep[v]]] for v in range(nv)]

    # -- search ----------------------------------------------------------------

    def _tick(self, depth: int):
        st = self.stats
        st.nodes += 1
        if depth > st.max_depth:
            st.max_depth = depth
        o = self.opts
        if o.budget_nodes is not None and st.nodes > o.budget_nodes:
            raise _OutOfBudget(f"node budget {o.budget_nodes} exhausted")
        if o.budget_secs is not None and time.monotonic() - st.start > o.budget_secs:
            raise _OutOfBudget(f"time budget {o.budget_secs}s exhausted")

    def root(self):
        le = [1 << v for v in range(self.nv)]
        lt = [0] * self.nv
        if not self._assert(le, lt, self.hard):
            return le, lt, None
        return le, lt, list(range(len(self.clauses)))

    def branches(self, le, lt, open_idx, depth: int):
        """Propagate; yield child states, or a terminal marker."""
        remaining = self._propagate(le, lt, open_idx)
        if remaining is None:
            return "conflict", None
        coords = None
        if self.units and (self.opts.lp_every_node or not remaining):
            coords = self._lp(le, lt)
            if coords is None:
                return "conflict", None
        if not remaining:
            return "leaf", coords
        ci, live = min(remaining, key=lambda item: (len(item[1]), item[0]))
        if depth == 0 and self.opts.symmetry_breaking and ci in self.bottom_literal:
            bl = self.bottom_literal[ci]
            live = [li for li in live if li == bl] or live
        rest = [c for c, _ in remaining if c != ci]
        children = []
        lits = self.clauses[ci]
        for k, li in enumerate(live):
            negs = []
            for prev in live[:k]:
                if len(lits[prev]) == 1:
                    u, v, s = lits[prev][0]
                    negs.append((v, u, not s))
            children.append((lits[li] + negs, rest))
        return "branch", children

    def run(self, le, lt, open_idx, depth: int = 0):
        self._tick(depth)
        kind, payload = self.branches(le, lt, open_idx, depth)
        if kind == "conflict":
            return None
        if kind == "leaf":
            return payload if payload is not None else self._ranks(le, lt)
        for triples, rest in payload:
            le2, lt2 = le[:], lt[:]
            if not self._assert(le2, lt2, triples):
                continue
            found = self.run(le2, lt2, rest, depth + 1)
            if found is not None:
                return found
        return None

    def _ranks(self, le, lt) -> list[Fraction]:
        """Integer coordinates: length of the longest strict chain below each variable."""
        nv = self.nv
        order = sorted(range(nv), key=lambda v: bin(sum(1 << a for a in range(nv) if lt[a] >> v & 1)).count("1"))
        rank = [0] * nv
        for v in order:
            below = [rank[a] + 1 for a in range(nv) if lt[a] >> v & 1]
            rank[v] = max(below, default=0)
        return [Fraction(r) for r in rank]

    def witness(self, coords: Sequence[Fraction]) -> TrapezoidRepresentation:
        items = []
        for e, i in self.idx.items():
            L, R, l, r = (coords[4 * i + k] for k in range(4))  # noqa: E741
            items.append((e, Trapezoid(L, R, l, r)))
        return TrapezoidRepresentation(items)


def _validate(cs: ConstraintSystem, rep: TrapezoidRepresentation) -> None:
    if not represents(rep, cs.poset):
        raise WitnessError("witness does not represent the order")
    if cs.mode.proper and not is_proper(rep):
        raise WitnessError("witness is not proper")
    if cs.mode.unit and not is_unit(rep):
        raise WitnessError("witness is not unit")
    for atom in cs.hard:
        if not atom.holds(rep):
            raise WitnessError(f"hard atom {atom} violated")
    for clause in cs.all_clauses():
        if not any(all(a.holds(rep) for a in lit) for lit in clause):
            raise WitnessError("clause violated by witness")


def _subtree_worker(args):
    cs, opts, k = args
    s = _Search(cs, opts)
    le, lt, open_idx = s.root()
    s._tick(0)
    kind, payload = s.branches(le, lt, open_idx, 0)
    triples, rest = payload[k]
    found = None
    status = UNSAT
    try:
        if s._assert(le, lt, triples):
            found = s.run(le, lt, rest, 1)
    except _OutOfBudget as exc:
        status = INCONCLUSIVE
        return status, None, s.stats.nodes, s.stats.max_depth, s.stats.lp_calls, str(exc)
    if found is not None:
        status = SAT
    return status, found, s.stats.nodes, s.stats.max_depth, s.stats.lp_calls, ""


def solve(cs: ConstraintSystem, options: SolveOptions | None = None, **kw) -> SolveResult:
    """Decide whether ``cs`` has a model; SAT results carry a validated witness."""
    opts = options or SolveOptions(**kw)
    if opts.symmetry_breaking and not flip_symmetric(cs):
        raise ValueError("symmetry breaking requested for a system that is not flip-symmetric")
    s = _Search(cs, opts)
    start = time.monotonic()
    le, lt, open_idx = s.root()

    def result(status, coords=None, reason=""):
        w = None
        if coords is not None:
            w = s.witness(coords)
            _validate(cs, w)
        return SolveResult(
            status, w, s.stats.nodes, s.stats.max_depth, time.monotonic() - start,
            s.stats.lp_calls, reason,
        )

    if open_idx is None:
        s.stats.nodes = 1
        return result(UNSAT, reason="hard atoms inconsistent")
    try:
        if opts.threads > 1:
            return _solve_parallel(cs, opts, s, le, lt, open_idx, result)
        found = s.run(le, lt, open_idx)
    except _OutOfBudget as exc:
        return result(INCONCLUSIVE, reason=str(exc))
    if found is None:
        return result(UNSAT)
    return result(SAT, found)


def _solve_parallel(cs, opts, s, le, lt, open_idx, result):
    s._tick(0)
    kind, payload = s.branches(le[:], lt[:], open_idx, 0)
    if kind == "conflict":
        return result(UNSAT)
    if kind == "leaf":
        return result(SAT, payload if payload is not None else s._ranks(le, lt))
    jobs = [(cs, opts, k) for k in range(len(payload))]
    with ProcessPoolExecutor(max_workers=opts.threads) as pool:
        outcomes = list(pool.map(_subtree_worker, jobs))
    for status, found, nodes, depth, lpc, reason in outcomes:
        s.stats.nodes += nodes
        s.stats.max_depth = max(s.stats.max_depth, depth)
        s.stats.lp_calls += lpc
    # first SAT subtree in branch order wins, so the witness is schedule independent
    for status, found, *_ in outcomes:
        if status == SAT:
            return result(SAT, found)
    for status, found, nodes, depth, lpc, reason in outcomes:
        if status == INCONCLUSIVE:
            return result(INCONCLUSIVE, reason=reason)
    return result(UNSAT)


def flip_symmetric(cs: ConstraintSystem) -> bool:
    """True iff swapping the baselines maps the clause set onto itself."""

    def canon(clause):
        return frozenset(frozenset(lit) for lit in clause)

    def flip(clause):
        return tuple(tuple(a.flipped() for a in lit) for lit in clause)

    clauses = {canon(c) for c in cs.all_clauses()}
    hard = set(cs.hard)
    return all(canon(flip(c)) in clauses for c in cs.all_clauses()) and all(
        a.flipped() in hard for a in hard
    )


def solve_poset(p: Poset, mode: Mode | str = Mode.ANY, extra_clauses: Iterable[Clause] = (),
                equality_branch: bool = True, **kw) -> SolveResult:
    return solve(compile_system(p, mode, extra_clauses, equality_branch), **kw)


def forced_disjunction(
    p: Poset,
    mode: Mode | str,
    facts: Sequence[Sequence[Atom]],
    **kw,
) -> bool:
    """True iff every mode representation satisfies at least one of ``facts``.

    Vacuously true when ``p`` has no representation in ``mode``.  Raises
    :class:`Inconclusive` when the budget runs out.
    """
    for fact in facts:
        check_fact_elements(p, fact)
    res = solve_poset(p, mode, [negate_conjunction(f) for f in facts], **kw)
    if res.inconclusive:
        raise Inconclusive(res.reason, res)
    return res.unsat


def forced(p: Poset, mode: Mode | str, fact: Sequence[Atom], **kw) -> bool:
    """True iff the conjunction ``fact`` holds in every mode representation."""
    return forced_disjunction(p, mode, [fact], **kw)


def forced_with_stats(p: Poset, mode, facts, **kw) -> tuple[bool, SolveResult]:
    for fact in facts:
        check_fact_elements(p, fact)
    res = solve_poset(p, mode, [negate_conjunction(f) for f in facts], **kw)
    if res.inconclusive:
        raise Inconclusive(res.reason, res)
    return res.unsat, res


@dataclass
class NestingReport:
    """Outcome of the counting argument that rules out unit representations."""

    ok: bool
    inner: tuple[str, ...]
    bottom_host: str
    top_host: str
    containment_forced: bool = False
    chain_forced: bool = False
    bound: int = 0
    nodes: int = 0
    lines: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        return "\n".join(self.lines)


def _nesting_fact(inner, bottom_host, top_host) -> tuple[Atom, ...]:
    from .constraints import le as le_atom

    atoms = []
    for u in inner:
        atoms += [
            le_atom("l", bottom_host, "l", u), le_atom("r", u, "r", bottom_host),
            le_atom("L", top_host, "L", u), le_atom("R", u, "R", top_host),
        ]
    return tuple(atoms)


def certify_unit_impossible_by_nesting(
    p: Poset,
    inner: Sequence[str],
    bottom_host: str,
    top_host: str,
    **kw,
) -> NestingReport:
    """Rule out unit representations by squeezing a chain into two hosts.

    If the k elements of ``inner`` form a chain whose bottom intervals are
    forced inside the bottom interval of ``bottom_host`` and whose top
    intervals are forced inside the top interval of ``top_host`` (or the
    same with the baselines swapped), then in a unit representation the
    k disjoint inner trapezoids have base sums totalling 2k, so one host
    gets a base longer than k.  For k >= 2 that exceeds the host's own sum
    of 2.  Raises :class:`Inconclusive` if a forcing query runs out of budget.
    """
    from .constraints import lt as lt_atom

    inner = tuple(inner)
    for e in (*inner, bottom_host, top_host):
        p.index(e)
    k = len(inner)
    rep = NestingReport(False, inner, bottom_host, top_host, bound=2 * k)
    say = rep.lines.append
    if not inner:
        say("no inner elements")
        return rep

    fact = _nesting_fact(inner, bottom_host, top_host)
    mirrored = tuple(a.flipped() for a in fact)
    forced_ok, res = forced_with_stats(p, Mode.ANY, [fact, mirrored], **kw)
    rep.nodes += res.nodes
    rep.containment_forced = forced_ok
    say(
        f"containment of {{{','.join(inner)}}} in bottom of {bottom_host} and top of "
        f"{top_host} (or mirrored): {'forced' if forced_ok else 'NOT forced'} ({res.nodes} nodes)"
    )
    if not forced_ok:
        return rep

    ordered = sorted(inner, key=lambda u: len(p.predecessors(u)))
    if any(not p.less(u, v) for u, v in zip(ordered, ordered[1:])):
        say(f"{{{','.join(inner)}}} is not a chain, so the intervals may overlap")
        return rep
    chain_fact = tuple(
        a for u, v in zip(ordered, ordered[1:]) for a in (lt_atom("r", u, "l", v), lt_atom("R", u, "L", v))
    )
    chain_ok = True
    if chain_fact:
        chain_ok, res = forced_with_stats(p, Mode.ANY, [chain_fact], **kw)
        rep.nodes += res.nodes
    rep.chain_forced = chain_ok
    say(f"chain {'<'.join(ordered)} disjoint on both baselines: {'forced' if chain_ok else 'NOT forced'}")
    if not chain_ok:
        return rep

    say(f"unit: sum of t+b over the inner elements is 2*{k} = {2 * k}")
    say(f"so the top bases or the bottom bases of the inner elements sum to at least {k}")
    say(f"strict disjointness inside the host: t({top_host}) > {k} or b({bottom_host}) > {k}"
        if k > 1 else f"so t({top_host}) >= 1 or b({bottom_host}) >= 1")
    if k < 2:
        say("bound 2 vs host sum 2: no contradiction")
        return rep
    say(f"bound {2 * k} vs host sum 2: a host base would exceed {k} >= 2, contradiction")
    rep.ok = True
    return rep

"""Endpoint atoms, disjunctive clauses and their compilation from an order."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .poset import Poset, PosetError

ENDPOINTS = ("L", "R", "l", "r")


class Mode(str, Enum):
    ANY = "any"
    PROPER = "proper"
    UNIT = "unit"
    PROPER_UNIT = "proper-unit"

    @property
    def proper(self) -> bool:
        return self in (Mode.PROPER, Mode.PROPER_UNIT)

    @property
    def unit(self) -> bool:
        return self in (Mode.UNIT, Mode.PROPER_UNIT)


@dataclass(frozen=True, order=True)
class Endpoint:
    kind: str
    elem: str

    def __post_init__(self):
        if self.kind not in ENDPOINTS:
            raise ValueError(f"bad endpoint kind {self.kind!r}")

    def flipped(self) -> "Endpoint":
        return Endpoint({"L": "l", "R": "r", "l": "L", "r": "R"}[self.kind], self.elem)

    def __str__(self) -> str:
        return f"{self.kind}({self.elem})"


_OPS = {"lt": "<", "le": "<=", "eq": "="}


@dataclass(frozen=True, order=True)
class Atom:
    kind: str  # lt | le | eq
    left: Endpoint
    right: Endpoint

    def __post_init__(self):
        if self.kind not in _OPS:
            raise ValueError(f"bad atom kind {self.kind!r}")

    def negation(self) -> tuple["Atom", ...]:
        """Negated atom as a disjunction (eq negates to two strict atoms)."""
        if self.kind == "lt":
            return (Atom("le", self.right, self.left),)
        if self.kind == "le":
            return (Atom("lt", self.right, self.left),)
        return (Atom("lt", self.left, self.right), Atom("lt", self.right, self.left))

    def flipped(self) -> "Atom":
        return Atom(self.kind, self.left.flipped(), self.right.flipped())

    def holds(self, rep) -> bool:
        a = getattr(rep[self.left.elem], self.left.kind)
        b = getattr(rep[self.right.elem], self.right.kind)
        return a < b if self.kind == "lt" else a <= b if self.kind == "le" else a == b

    def __str__(self) -> str:
        return f"{self.left}{_OPS[self.kind]}{self.right}"


def lt(a: str, x: str, b: str, y: str) -> Atom:
    return Atom("lt", Endpoint(a, x), Endpoint(b, y))


def le(a: str, x: str, b: str, y: str) -> Atom:
    return Atom("le", Endpoint(a, x), Endpoint(b, y))


def eq(a: str, x: str, b: str, y: str) -> Atom:
    return Atom("eq", Endpoint(a, x), Endpoint(b, y))


Literal = tuple[Atom, ...]  # conjunction
Clause = tuple[Literal, ...]  # disjunction


def negate_conjunction(fact: Sequence[Atom]) -> Clause:
    """Clause expressing that at least one atom of ``fact`` fails."""
    return tuple((n,) for a in fact for n in a.negation())


@dataclass(frozen=True)
class UnitEquation:
    """(R(x) - L(x)) + (r(x) - l(x)) = 2."""

    elem: str

    def __str__(self) -> str:
        return f"t({self.elem})+b({self.elem})=2"


@dataclass(frozen=True)
class ConstraintSystem:
    poset: Poset
    mode: Mode
    hard: tuple[Atom, ...]
    clauses: tuple[Clause, ...]
    unit_equations: tuple[UnitEquation, ...] = ()
    equality_branch: bool = True
    # clauses added on top of the compiled order (queries); searched first
    extra: tuple[Clause, ...] = field(default=())

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    def with_clauses(self, clauses: Iterable[Clause]) -> "ConstraintSystem":
        return ConstraintSystem(
            self.poset, self.mode, self.hard, self.clauses, self.unit_equations,
            self.equality_branch, self.extra + tuple(clauses),
        )

    def all_clauses(self) -> tuple[Clause, ...]:
        return self.extra + self.clauses


def incomparability_clauses(x: str, y: str) -> tuple[Clause, Clause]:
    """not x<y and not y<x: the trapezoids share a point on some baseline."""
    return (
        ((le("L", y, "R", x),), (le("l", y, "r", x),)),
        ((le("L", x, "R", y),), (le("l", x, "r", y),)),
    )


def no_containment_clause(x: str, y: str, equality_branch: bool = True) -> Clause:
    """T_x is not properly inside T_y."""
    lits: list[Literal] = [
        (lt("L", x, "L", y),),
        (lt("R", y, "R", x),),
        (lt("l", x, "l", y),),
        (lt("r", y, "r", x),),
    ]
    if equality_branch:
        lits.append(tuple(eq(k, x, k, y) for k in ENDPOINTS))
    return tuple(lits)


def compile_system(
    p: Poset,
    mode: Mode | str = Mode.ANY,
    extra_clauses: Iterable[Clause] = (),
    equality_branch: bool = True,
) -> ConstraintSystem:
    mode = Mode(mode)
    hard: list[Atom] = []
    for x in p.elements:
        hard.append(le("L", x, "R", x))
        hard.append(le("l", x, "r", x))
    for x, y in p.pairs():
        hard.append(lt("R", x, "L", y))
        hard.append(lt("r", x, "l", y))
    clauses: list[Clause] = []
    for x, y in p.incomparable_pairs():
        clauses.extend(incomparability_clauses(x, y))
    if mode.proper:
        for x, y in p.incomparable_pairs():
            clauses.append(no_containment_clause(x, y, equality_branch))
            clauses.append(no_containment_clause(y, x, equality_branch))
    units = tuple(UnitEquation(x) for x in p.elements) if mode.unit else ()
    cs = ConstraintSystem(p, mode, tuple(hard), tuple(clauses), units, equality_branch)
    extra = tuple(extra_clauses)
    for clause in extra:
        _check_clause(p, clause)
    return cs.with_clauses(extra) if extra else cs


def _check_clause(p: Poset, clause: Clause) -> None:
    if not clause or any(not lit for lit in clause):
        raise ValueError("clauses and literals must be non-empty")
    for lit in clause:
        for atom in lit:
            p.index(atom.left.elem)
            p.index(atom.right.elem)


# -- fact grammar: "R(E)<L(2), L(2)<=R(2)" ----------------------------------

_ATOM_RE = re.compile(r"\s*([LRlr])\(\s*([^()\s]+)\s*\)\s*(<=|<|=)\s*([LRlr])\(\s*([^()\s]+)\s*\)\s*")


def parse_fact(text: str) -> tuple[Atom, ...]:
    """Parse a comma separated conjunction of endpoint comparisons."""
    atoms = []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _ATOM_RE.fullmatch(part)
        if not m:
            raise ValueError(f"cannot parse atom {part.strip()!r}")
        a, x, op, b, y = m.groups()
        kind = {"<": "lt", "<=": "le", "=": "eq"}[op]
        atoms.append(Atom(kind, Endpoint(a, x), Endpoint(b, y)))
    if not atoms:
        raise ValueError("empty fact")
    return tuple(atoms)


def parse_chain(text: str) -> tuple[Atom, ...]:
    """Parse ``r(B)<l(C)<=r(1)`` style chains into consecutive atoms."""
    toks = re.findall(r"[LRlr]\([^()\s]+\)|<=|<|=", text.replace("≤", "<="))
    atoms = []
    for i in range(0, len(toks) - 2, 2):
        atoms.extend(parse_fact(toks[i] + toks[i + 1] + toks[i + 2]))
    return tuple(atoms)


def check_fact_elements(p: Poset, fact: Iterable[Atom]) -> None:
    for a in fact:
        for e in (a.left.elem, a.right.elem):
            if e not in p.elements:
                raise PosetError(f"unknown element {e!r} in fact")

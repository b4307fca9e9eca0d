"""Finite strict partial orders on named elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence


class PosetError(ValueError):
    """Raised for malformed orders or unknown elements."""


class PosetFormatError(PosetError):
    """Raised by the .pos loader; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Poset:
    """A strict partial order.

    ``rel[i][j]`` is true iff ``elements[i]`` precedes ``elements[j]``.
    Instances are validated on construction and never mutated.
    """

    elements: tuple[str, ...]
    rel: tuple[tuple[bool, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            dup = sorted({e for e in self.elements if self.elements.count(e) > 1})
            raise PosetError(f"duplicate element(s): {', '.join(dup)}")
        if len(self.rel) != n or any(len(row) != n for row in self.rel):
            raise PosetError("relation matrix shape does not match element count")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(self.elements)})
        _check_order(self.elements, self.rel)

    # -- basic queries --------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise PosetError(f"unknown element {x!r}") from None

    def less(self, x: str, y: str) -> bool:
        return self.rel[self.index(x)][self.index(y)]

    def comparable(self, x: str, y: str) -> bool:
        return self.less(x, y) or self.less(y, x)

    def pairs(self) -> list[tuple[str, str]]:
        """All (a, b) with a < b, in element order."""
        els = self.elements
        return [(els[i], els[j]) for i, row in enumerate(self.rel) for j, v in enumerate(row) if v]

    def incomparable_pairs(self) -> list[tuple[str, str]]:
        n = len(self.elements)
        return [
            (self.elements[i], self.elements[j])
            for i, j in combinations(range(n), 2)
            if not self.rel[i][j] and not self.rel[j][i]
        ]

    def predecessors(self, x: str) -> set[str]:
        j = self.index(x)
        return {self.elements[i] for i in range(len(self)) if self.rel[i][j]}

    def successors(self, x: str) -> set[str]:
        i = self.index(x)
        return {self.elements[j] for j in range(len(self)) if self.rel[i][j]}

    def relation_key(self) -> tuple:
        """Hashable labelled identity: element set plus the set of pairs."""
        return (frozenset(self.elements), frozenset(self.pairs()))

    def same_order(self, other: "Poset") -> bool:
        """Labelled equality, ignoring the order in which elements are listed."""
        return self.relation_key() == other.relation_key()

    def __str__(self) -> str:
        rels = ", ".join(f"{a}<{b}" for a, b in self.pairs())
        return f"Poset({' '.join(self.elements)}; {rels})"


def _check_order(elements: Sequence[str], rel) -> None:
    n = len(elements)
    for i in range(n):
        if rel[i][i]:
            raise PosetError(f"relation is not irreflexive at {elements[i]!r}")
    for i in range(n):
        for j in range(n):
            if rel[i][j] and rel[j][i]:
                raise PosetError(f"cycle between {elements[i]!r} and {elements[j]!r}")
    for i in range(n):
        for j in range(n):
            if rel[i][j]:
                for k in range(n):
                    if rel[j][k] and not rel[i][k]:
                        raise PosetError(
                            f"relation is not transitive: {elements[i]}<{elements[j]}<{elements[k]}"
                        )


def _closure(n: int, rel: list[list[bool]]) -> list[list[bool]]:
    # Warshall
    for k in range(n):
        rk = rel[k]
        for i in range(n):
            if rel[i][k]:
                ri = rel[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return rel


def make_poset(
    elements: Iterable[str],
    pairs: Iterable[tuple[str, str]] = (),
    close: bool = True,
) -> Poset:
    """Build a poset from ``a < b`` pairs.

    With ``close`` (the default) the transitive closure is taken first; a
    cycle then shows up as an antisymmetry violation.  With ``close=False``
    the pairs must already be transitively closed.
    """
    elements = tuple(elements)
    index: dict[str, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise PosetError(f"duplicate element {e!r}")
        index[e] = i
    n = len(elements)
    rel = [[False] * n for _ in range(n)]
    for a, b in pairs:
        for name in (a, b):
            if name not in index:
                raise PosetError(f"unknown element {name!r}")
        if a == b:
            raise PosetError(f"reflexive pair {a}<{a}")
        rel[index[a]][index[b]] = True
    if close:
        _closure(n, rel)
        for i in range(n):
            if rel[i][i]:
                raise PosetError(f"cycle through {elements[i]!r}")
    return Poset(elements, tuple(tuple(r) for r in rel))


def from_matrix(elements: Sequence[str], rel) -> Poset:
    return Poset(tuple(elements), tuple(tuple(bool(v) for v in row) for row in rel))


def chain(*names: str) -> Poset:
    return make_poset(names, zip(names, names[1:]))


def antichain(*names: str) -> Poset:
    return make_poset(names)


def incomparable(p: Poset, x: str, y: str) -> bool:
    i, j = p.index(x), p.index(y)
    return i != j and not p.rel[i][j] and not p.rel[j][i]


def restriction(p: Poset, subset: Iterable[str]) -> Poset:
    """Induced suborder on ``subset``, listed in the order of ``p``."""
    wanted = set(subset)
    for s in wanted:
        p.index(s)
    idx = [i for i, e in enumerate(p.elements) if e in wanted]
    return Poset(
        tuple(p.elements[i] for i in idx),
        tuple(tuple(p.rel[i][j] for j in idx) for i in idx),
    )


def dual(p: Poset) -> Poset:
    n = len(p)
    return Poset(p.elements, tuple(tuple(p.rel[j][i] for j in range(n)) for i in range(n)))


def intersect_orders(p: Poset, q: Poset) -> Poset:
    if set(p.elements) != set(q.elements):
        raise PosetError("element sets differ")
    return Poset(
        p.elements,
        tuple(
            tuple(p.rel[i][j] and q.less(x, y) for j, y in enumerate(p.elements))
            for i, x in enumerate(p.elements)
        ),
    )


def relabel(p: Poset, mapping: dict[str, str]) -> Poset:
    return Poset(tuple(mapping[e] for e in p.elements), p.rel)


def find_embeddings(pattern: Poset, host: Poset) -> list[dict[str, str]]:
    """All injective maps f with ``x < y  <=>  f(x) < f(y)``.

    Plain backtracking; pattern elements are placed most-constrained first
    and candidates are pruned by in/out degree.  Results are sorted by the
    tuple of images taken in pattern element order.
    """
    n, m = len(pattern), len(host)
    if n > m:
        return []
    prel, hrel = pattern.rel, host.rel
    pdeg = [(sum(prel[i]), sum(prel[j][i] for j in range(n))) for i in range(n)]
    hdeg = [(sum(hrel[i]), sum(hrel[j][i] for j in range(m))) for i in range(m)]
    cands = [
        [h for h in range(m) if hdeg[h][0] >= pdeg[i][0] and hdeg[h][1] >= pdeg[i][1]]
        for i in range(n)
    ]
    order = sorted(range(n), key=lambda i: (len(cands[i]), -sum(pdeg[i]), i))
    assign = [-1] * n
    used = [False] * m
    found: list[tuple[int, ...]] = []

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(assign))
            return
        i = order[k]
        for h in cands[i]:
            if used[h]:
                continue
            ok = True
            for t in range(k):
                j = order[t]
                g = assign[j]
                if prel[i][j] != hrel[h][g] or prel[j][i] != hrel[g][h]:
                    ok = False
                    break
            if ok:
                assign[i] = h
                used[h] = True
                extend(k + 1)
                used[h] = False
        assign[i] = -1

    extend(0)
    found.sort()
    return [
        {pattern.elements[i]: host.elements[img[i]] for i in range(n)} for img in found
    ]


def is_isomorphic(p: Poset, q: Poset) -> bool:
    if len(p) != len(q) or len(p.pairs()) != len(q.pairs()):
        return False
    return bool(find_embeddings(p, q))


@dataclass(frozen=True)
class IncompGraph:
    """Incomparability graph: an edge joins every incomparable pair."""

    elements: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def has_edge(self, x: str, y: str) -> bool:
        return frozenset((x, y)) in self.edges


def incomparability_graph(p: Poset) -> IncompGraph:
    return IncompGraph(p.elements, frozenset(frozenset(e) for e in p.incomparable_pairs()))


# -- .pos text format -------------------------------------------------------


def parse_poset(text: str, close: bool = True) -> Poset:
    """Parse ``elem <name>`` / ``rel <a> <b>`` lines; ``#`` starts a comment."""
    elements: list[str] = []
    seen: dict[str, int] = {}
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "elem":
            if len(parts) != 2:
                raise PosetFormatError("expected 'elem <name>'", lineno)
            if parts[1] in seen:
                raise PosetFormatError(f"duplicate element {parts[1]!r}", lineno)
            seen[parts[1]] = lineno
            elements.append(parts[1])
        elif parts[0] == "rel":
            if len(parts) != 3:
                raise PosetFormatError("expected 'rel <a> <b>'", lineno)
            for name in parts[1:]:
                if name not in seen:
                    raise PosetFormatError(f"unknown element {name!r}", lineno)
            if parts[1] == parts[2]:
                raise PosetFormatError(f"reflexive pair {parts[1]}<{parts[1]}", lineno)
            pairs.append((parts[1], parts[2]))
        else:
            raise PosetFormatError(f"unknown directive {parts[0]!r}", lineno)
    try:
        return make_poset(elements, pairs, close=close)
    except PosetError as exc:
        raise PosetFormatError(str(exc)) from exc


def load_poset(path: str | Path, close: bool = True) -> Poset:
    return parse_poset(Path(path).read_text(), close=close)


def format_poset(p: Poset, hasse: bool = False) -> str:
    lines = [f"elem {e}" for e in p.elements]
    for a, b in p.pairs():
        if hasse and any(p.less(a, c) and p.less(c, b) for c in p.elements):
            continue
        lines.append(f"rel {a} {b}")
    return "\n".join(lines) + "\n"

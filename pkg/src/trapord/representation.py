"""Trapezoid representations between two horizontal baselines.

The top baseline sits at height 1 and carries ``[L, R]``; the bottom one
sits at height 0 and carries ``[l, r]``.  All coordinates are exact
``Fraction`` values.  Intervals are closed, so touching trapezoids
intersect.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .poset import Poset, PosetError, from_matrix, intersect_orders


class RepresentationError(ValueError):
    pass


class RepresentationFormatError(RepresentationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def to_fraction(value) -> Fraction:
    """Exact conversion; strings may be integers, ``p/q`` or decimals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip()
        if not re.fullmatch(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)", s):
            raise RepresentationError(f"not a rational number: {value!r}")
        return Fraction(s)
    raise RepresentationError(f"refusing inexact coordinate {value!r}")


@dataclass(frozen=True)
class Trapezoid:
    L: Fraction
    R: Fraction
    l: Fraction  # noqa: E741
    r: Fraction

    @classmethod
    def of(cls, L, R, l, r) -> "Trapezoid":  # noqa: E741
        return cls(to_fraction(L), to_fraction(R), to_fraction(l), to_fraction(r))

    @property
    def top(self) -> tuple[Fraction, Fraction]:
        return (self.L, self.R)

    @property
    def bottom(self) -> tuple[Fraction, Fraction]:
        return (self.l, self.r)

    @property
    def t(self) -> Fraction:
        return self.R - self.L

    @property
    def b(self) -> Fraction:
        return self.r - self.l

    @property
    def area(self) -> Fraction:
        return (self.t + self.b) / 2

    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.L, self.R, self.l, self.r)

    def map(self, f: Callable[[Fraction], Fraction]) -> "Trapezoid":
        return Trapezoid(f(self.L), f(self.R), f(self.l), f(self.r))


class TrapezoidRepresentation(Mapping[str, Trapezoid]):
    """Immutable mapping from element names to trapezoids."""

    def __init__(self, traps: Mapping[str, Trapezoid] | Iterable[tuple[str, Trapezoid]]):
        items = list(traps.items()) if isinstance(traps, Mapping) else list(traps)
        names = [k for k, _ in items]
        if len(set(names)) != len(names):
            raise RepresentationError("duplicate element in representation")
        for name, tz in items:
            if tz.L > tz.R or tz.l > tz.r:
                raise RepresentationError(f"reversed interval for {name!r}")
        self._traps = dict(items)
        self.elements = tuple(names)

    @classmethod
    def from_coords(cls, coords: Mapping[str, tuple] | Iterable[tuple[str, tuple]]):
        items = coords.items() if isinstance(coords, Mapping) else coords
        return cls([(name, Trapezoid.of(*c)) for name, c in items])

    def __getitem__(self, key: str) -> Trapezoid:
        try:
            return self._traps[key]
        except KeyError:
            raise RepresentationError(f"unknown element {key!r}") from None

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrapezoidRepresentation):
            return NotImplemented
        return self._traps == other._traps

    def __hash__(self):
        return hash(frozenset(self._traps.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}={tuple(str(c) for c in v.coords())}" for k, v in self._traps.items())
        return f"TrapezoidRepresentation({body})"

    def map_coords(self, f: Callable[[Fraction], Fraction]) -> "TrapezoidRepresentation":
        return TrapezoidRepresentation([(k, v.map(f)) for k, v in self._traps.items()])

    def flip(self) -> "TrapezoidRepresentation":
        """Swap the two baselines."""
        return TrapezoidRepresentation(
            [(k, Trapezoid(v.l, v.r, v.L, v.R)) for k, v in self._traps.items()]
        )

    def subset(self, names: Iterable[str]) -> "TrapezoidRepresentation":
        keep = set(names)
        return TrapezoidRepresentation([(k, v) for k, v in self._traps.items() if k in keep])


def base_lengths(rep: TrapezoidRepresentation) -> dict[str, tuple[Fraction, Fraction]]:
    """``{x: (t(x), b(x))}``; recomputed on every call."""
    return {x: (rep[x].t, rep[x].b) for x in rep}


def _order(rep: TrapezoidRepresentation, before: Callable[[Trapezoid, Trapezoid], bool]) -> Poset:
    els = rep.elements
    return from_matrix(els, [[x != y and before(rep[x], rep[y]) for y in els] for x in els])


def top_interval_order(rep: TrapezoidRepresentation) -> Poset:
    return _order(rep, lambda a, b: a.R < b.L)


def bottom_interval_order(rep: TrapezoidRepresentation) -> Poset:
    return _order(rep, lambda a, b: a.r < b.l)


def induced_order(rep: TrapezoidRepresentation) -> Poset:
    """x < y iff T_x lies strictly left of T_y on both baselines."""
    return _order(rep, lambda a, b: a.R < b.L and a.r < b.l)


def trapezoid_contains(rep: TrapezoidRepresentation, x: str, y: str) -> bool:
    """True iff T_y is a subset of T_x."""
    a, b = rep[x], rep[y]
    return a.L <= b.L and b.R <= a.R and a.l <= b.l and b.r <= a.r


def containment_violations(rep: TrapezoidRepresentation) -> list[tuple[str, str]]:
    """Ordered pairs (x, y) with T_y properly inside T_x."""
    out = []
    for x in rep:
        for y in rep:
            if x != y and rep[x] != rep[y] and trapezoid_contains(rep, x, y):
                out.append((x, y))
    return out


def is_proper(rep: TrapezoidRepresentation) -> bool:
    return not containment_violations(rep)


def unit_defect(rep: TrapezoidRepresentation) -> Fraction:
    sums = [tz.t + tz.b for tz in rep.values()]
    if not sums:
        return Fraction(0)
    return max(sums) - min(sums)


def is_unit(rep: TrapezoidRepresentation) -> bool:
    return unit_defect(rep) == 0


def normalize_unit(rep: TrapezoidRepresentation) -> TrapezoidRepresentation:
    """Scale horizontally so that every ``t + b`` equals 2."""
    if not is_unit(rep):
        raise RepresentationError("representation is not unit")
    if not len(rep):
        return rep
    first = rep[rep.elements[0]]
    c = first.t + first.b
    if c == 0:
        raise RepresentationError("all trapezoids are degenerate segments")
    k = Fraction(2) / c
    return rep.map_coords(lambda v: v * k)


def represents(rep: TrapezoidRepresentation, p: Poset) -> bool:
    if set(rep.elements) != set(p.elements):
        raise PosetError("element sets of representation and order differ")
    return induced_order(rep).same_order(p)


def check_intersection_identity(rep: TrapezoidRepresentation) -> bool:
    """induced order == intersection of the two baseline interval orders."""
    return intersect_orders(top_interval_order(rep), bottom_interval_order(rep)).same_order(
        induced_order(rep)
    )


# -- .trep text format -------------------------------------------------------


def parse_representation(text: str) -> TrapezoidRepresentation:
    items = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "trap" or len(parts) != 6:
            raise RepresentationFormatError("expected 'trap <name> <L> <R> <l> <r>'", lineno)
        name = parts[1]
        if name in seen:
            raise RepresentationFormatError(f"duplicate element {name!r}", lineno)
        seen.add(name)
        try:
            tz = Trapezoid.of(*parts[2:])
        except RepresentationError as exc:
            raise RepresentationFormatError(str(exc), lineno) from exc
        if tz.L > tz.R or tz.l > tz.r:
            raise RepresentationFormatError(f"reversed interval for {name!r}", lineno)
        items.append((name, tz))
    return TrapezoidRepresentation(items)


def load_representation(path: str | Path) -> TrapezoidRepresentation:
    return parse_representation(Path(path).read_text())


def format_representation(rep: TrapezoidRepresentation) -> str:
    return "".join(
        f"trap {x} {rep[x].L} {rep[x].R} {rep[x].l} {rep[x].r}\n" for x in rep.elements
    )


def save_representation(rep: TrapezoidRepresentation, path: str | Path) -> None:
    Path(path).write_text(format_representation(rep))

"""Exact rational linear programming.

A small two-phase simplex over ``Fraction`` with sparse dict rows and
Bland's rule (the systems built by the solver are highly degenerate, so
anti-cycling matters more than pivot count).  All variables are >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

Row = dict[int, Fraction]

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    value: Fraction | None = None
    pivots: int = 0


def _pivot(rows: list[Row], rhs: list[Fraction], obj: Row, objval: list, basis: list[int], r: int, c: int):
    prow = rows[r]
    piv = prow[c]
    if piv != 1:
        inv = 1 / piv
        for k in prow:
            prow[k] *= inv
        rhs[r] *= inv
    prow[c] = Fraction(1)
    pr = rhs[r]
    for i, row in enumerate(rows):
        if i == r:
            continue
        f = row.get(c)
        if not f:
            continue
        for k, v in prow.items():
            nv = row.get(k, 0) - f * v
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
        rhs[i] -= f * pr
    f = obj.get(c)
    if f:
        for k, v in prow.items():
            nv = obj.get(k, 0) - f * v
            if nv:
                obj[k] = nv
            else:
                obj.pop(k, None)
        objval[0] += f * pr
    basis[r] = c


def _run(rows, rhs, obj, objval, basis, allowed_cols, max_pivots) -> tuple[str, int]:
    """Maximise; ``obj`` holds reduced costs (entering when > 0)."""
    pivots = 0
    while True:
        enter = None
        for c in sorted(k for k, v in obj.items() if v > 0):
            if c in allowed_cols:
                enter = c
                break
        if enter is None:
            return OPTIMAL, pivots
        best = None
        for i, row in enumerate(rows):
            a = row.get(enter)
            if a is not None and a > 0:
                ratio = rhs[i] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            return UNBOUNDED, pivots
        _pivot(rows, rhs, obj, objval, basis, best[1], enter)
        pivots += 1
        if max_pivots is not None and pivots > max_pivots:
            raise RuntimeError("simplex pivot limit exceeded")


def maximize(
    c: Mapping[int, Fraction],
    n: int,
    ub: Sequence[tuple[Mapping[int, Fraction], Fraction]] = (),
    eq: Sequence[tuple[Mapping[int, Fraction], Fraction]] = (),
    max_pivots: int | None = None,
) -> LPResult:
    """Maximise ``c.x`` subject to ``a.x <= b`` (ub), ``a.x == b`` (eq), ``x >= 0``.

    Rows are given sparsely as ``({col: coeff}, rhs)`` over columns ``0..n-1``.
    """
    rows: list[Row] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    ncol = n
    artificials: list[int] = []
    for a, b in ub:
        row = {k: Fraction(v) for k, v in a.items() if v}
        b = Fraction(b)
        slack = ncol
        ncol += 1
        row[slack] = Fraction(1)
        if b < 0:
            row = {k: -v for k, v in row.items()}
            b = -b
            art = ncol
            ncol += 1
            row[art] = Fraction(1)
            artificials.append(art)
            basis.append(art)
        else:
            basis.append(slack)
        rows.append(row)
        rhs.append(b)
    for a, b in eq:
        row = {k: Fraction(v) for k, v in a.items() if v}
        b = Fraction(b)
        if b < 0:
            row = {k: -v for k, v in row.items()}
            b = -b
        art = ncol
        ncol += 1
        row[art] = Fraction(1)
        artificials.append(art)
        basis.append(art)
        rows.append(row)
        rhs.append(b)

    total = 0
    art_set = set(artificials)
    if artificials:
        # phase 1: maximise -sum(artificials), expressed in non-basic terms
        obj: Row = {}
        objval = [Fraction(0)]
        for i, bv in enumerate(basis):
            if bv in art_set:
                for k, v in rows[i].items():
                    if k not in art_set:
                        obj[k] = obj.get(k, 0) + v
                objval[0] -= rhs[i]
        obj = {k: v for k, v in obj.items() if v}
        status, p = _run(rows, rhs, obj, objval, basis, set(range(ncol)), max_pivots)
        total += p
        if objval[0] != 0:
            return LPResult(INFEASIBLE, pivots=total)
        # drive remaining (zero-level) artificials out of the basis
        for i in range(len(rows)):
            if basis[i] in art_set:
                col = next((k for k in sorted(rows[i]) if k not in art_set), None)
                if col is not None:
                    _pivot(rows, rhs, {}, [Fraction(0)], basis, i, col)
                    total += 1
        keep = [i for i in range(len(rows)) if basis[i] not in art_set]
        rows = [rows[i] for i in keep]
        rhs = [rhs[i] for i in keep]
        basis = [basis[i] for i in keep]
        for row in rows:
            for a in art_set.intersection(row):
                del row[a]

    allowed = set(range(ncol)) - art_set
    obj = {k: Fraction(v) for k, v in c.items() if v}
    objval = [Fraction(0)]
    for i, bv in enumerate(basis):
        f = obj.get(bv)
        if f:
            for k, v in rows[i].items():
                nv = obj.get(k, 0) - f * v
                if nv:
                    obj[k] = nv
                else:
                    obj.pop(k, None)
            objval[0] += f * rhs[i]
    status, p = _run(rows, rhs, obj, objval, basis, allowed, max_pivots)
    total += p
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = rhs[i]
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, x=x, pivots=total)
    value = sum((Fraction(v) * x[k] for k, v in c.items()), Fraction(0))
    return LPResult(OPTIMAL, x=x, value=value, pivots=total)

"""Autonomous sets (modules) of orders and reversal of autonomous sets.

Reversing an autonomous set leaves the comparability graph unchanged, and
any two orders with the same comparability graph are linked by a finite
sequence of such reversals.  Checking a property on every order reachable
by reversals therefore decides it for the incomparability graph.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Iterable

from .poset import Poset, PosetError, is_isomorphic

MAX_SUBSET_SCAN = 25


class ClosureLimitExceeded(RuntimeError):
    pass


def _relation(p: Poset, i: int, j: int) -> int:
    if p.rel[i][j]:
        return 1
    if p.rel[j][i]:
        return -1
    return 0


def is_autonomous(p: Poset, subset: Iterable[str]) -> bool:
    """Every element outside ``subset`` relates the same way to all members."""
    members = [p.index(s) for s in set(subset)]
    if len(members) <= 1:
        return True
    inside = set(members)
    for t in range(len(p)):
        if t in inside:
            continue
        first = _relation(p, t, members[0])
        if any(_relation(p, t, m) != first for m in members[1:]):
            return False
    return True


def autonomous_sets(p: Poset, nontrivial_only: bool = True) -> list[frozenset[str]]:
    """All autonomous sets by exhaustive subset scan.

    Sorted by size, then by the members' positions in ``p.elements``.
    Non-trivial means at least two elements and not the whole order.
    """
    n = len(p)
    if n > MAX_SUBSET_SCAN:
        raise PosetError(f"subset scan limited to {MAX_SUBSET_SCAN} elements, got {n}")
    # per outside element t, a bitmask of members that are <, > or || t
    groups = []
    for t in range(n):
        below = above = apart = 0
        for s in range(n):
            if s == t:
                continue
            r = _relation(p, t, s)
            if r == 1:
                above |= 1 << s
            elif r == -1:
                below |= 1 << s
            else:
                apart |= 1 << s
        groups.append((below, above, apart))
    found = []
    full = (1 << n) - 1
    for mask in range(1, full + 1):
        size = bin(mask).count("1")
        if nontrivial_only and (size < 2 or mask == full):
            continue
        ok = True
        rest = full & ~mask
        while rest:
            low = rest & -rest
            t = low.bit_length() - 1
            rest ^= low
            hits = sum(1 for g in groups[t] if g & mask)
            if hits > 1:
                ok = False
                break
        if ok:
            found.append(mask)
    found.sort(key=lambda m: (bin(m).count("1"), [i for i in range(n) if m >> i & 1]))
    return [frozenset(p.elements[i] for i in range(n) if m >> i & 1) for m in found]


def autonomous_sets_naive(p: Poset, nontrivial_only: bool = True) -> list[frozenset[str]]:
    """Second, definition-level implementation used to cross-check the fast scan."""
    from itertools import combinations

    out = []
    n = len(p)
    for k in range(1, n + 1):
        for combo in combinations(p.elements, k):
            if nontrivial_only and (k < 2 or k == n):
                continue
            if is_autonomous(p, combo):
                out.append(frozenset(combo))
    return out


def reverse_module(p: Poset, subset: Iterable[str]) -> Poset:
    """Transpose the order inside an autonomous set; everything else stays."""
    subset = set(subset)
    if not is_autonomous(p, subset):
        raise PosetError(f"{sorted(subset)} is not autonomous")
    inside = [s in subset for s in p.elements]
    n = len(p)
    rel = tuple(
        tuple(p.rel[j][i] if inside[i] and inside[j] else p.rel[i][j] for j in range(n))
        for i in range(n)
    )
    return Poset(p.elements, rel)


def reversal_closure(p: Poset, limit: int = 10_000) -> list[Poset]:
    """Every order reachable from ``p`` by reversing autonomous sets.

    Deduplicated by labelled relation (not isomorphism); breadth-first, so
    the result order is deterministic and starts with ``p`` itself.
    """
    seen = {p.relation_key()}
    out = [p]
    queue = deque([p])
    while queue:
        q = queue.popleft()
        for module in autonomous_sets(q, nontrivial_only=False):
            if len(module) < 2:
                continue
            r = reverse_module(q, module)
            key = r.relation_key()
            if key in seen:
                continue
            seen.add(key)
            out.append(r)
            if len(out) > limit:
                raise ClosureLimitExceeded(f"more than {limit} orders in the reversal closure")
            queue.append(r)
    return out


def graph_property_holds(
    p: Poset,
    checker: Callable[[Poset], bool],
    limit: int = 10_000,
) -> bool:
    """Conjunction of ``checker`` over the reversal closure of ``p``."""
    return all(checker(q) for q in reversal_closure(p, limit))


def closure_report(p: Poset, checker: Callable[[Poset], bool], limit: int = 10_000):
    """Per member: (order, isomorphic to p, checker outcome)."""
    return [(q, is_isomorphic(q, p), checker(q)) for q in reversal_closure(p, limit)]

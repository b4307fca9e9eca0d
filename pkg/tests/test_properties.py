"""Randomised property suites, fixed seed via the ``repro`` profile."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import posets, representations
from trapord.constraints import Mode
from trapord.poset import intersect_orders
from trapord.representation import (
    Trapezoid,
    TrapezoidRepresentation,
    bottom_interval_order,
    induced_order,
    is_proper,
    is_unit,
    represents,
    top_interval_order,
    trapezoid_contains,
)
from trapord.solver import solve_poset

MANY = settings(max_examples=1000)


@st.composite
def unit_representations(draw, max_n=8, hi=20):
    s = draw(st.integers(0, 8))
    n = draw(st.integers(1, max_n))
    traps = []
    for i in range(n):
        t = draw(st.integers(0, s))
        L = draw(st.integers(0, hi))
        l = draw(st.integers(0, hi))  # noqa: E741
        traps.append((f"u{i}", Trapezoid.of(L, L + t, l, l + s - t)))
    return TrapezoidRepresentation(traps)


def _inside(poly, pt):
    """Point in a convex polygon (counter-clockwise, possibly degenerate) by edge cross products."""
    px, py = pt
    for (ax, ay), (bx, by) in zip(poly, poly[1:] + poly[:1]):
        if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
            return False
    return True


def _polygon(tz):
    # bottom baseline at y=0, top at y=1; counter-clockwise
    return [(tz.l, 0), (tz.r, 0), (tz.R, 1), (tz.L, 1)]


@MANY
@given(representations())
def test_induced_order_is_a_poset(rep):
    p = induced_order(rep)
    els = p.elements
    for x in els:
        assert not p.less(x, x)
        for y in els:
            if p.less(x, y):
                assert not p.less(y, x)
                assert all(p.less(x, z) for z in els if p.less(y, z))


@MANY
@given(representations())
def test_induced_is_intersection_of_interval_orders(rep):
    both = intersect_orders(top_interval_order(rep), bottom_interval_order(rep))
    assert both.same_order(induced_order(rep))


@MANY
@given(representations())
def test_containment_matches_vertex_oracle(rep):
    for x in rep:
        for y in rep:
            outer = _polygon(rep[x])
            want = all(_inside(outer, v) for v in _polygon(rep[y]))
            assert trapezoid_contains(rep, x, y) == want


@MANY
@given(unit_representations())
def test_unit_implies_proper(rep):
    assert is_unit(rep)
    assert is_proper(rep)


@MANY
@given(representations())
def test_unit_implies_proper_on_arbitrary(rep):
    if is_unit(rep):
        assert is_proper(rep)


@MANY
@given(
    st.one_of(representations(), unit_representations()),
    st.fractions(min_value=Fraction(1, 7), max_value=5, max_denominator=9),
    st.fractions(min_value=-20, max_value=20, max_denominator=9),
)
def test_affine_maps_preserve_everything(rep, a, c):
    moved = rep.map_coords(lambda v: a * v + c)
    assert induced_order(moved).same_order(induced_order(rep))
    assert is_proper(moved) == is_proper(rep)
    assert is_unit(moved) == is_unit(rep)


@settings(max_examples=100)
@given(posets(max_n=6))
def test_solver_witness_round_trip(p):
    outcomes = {}
    for mode in Mode:
        res = solve_poset(p, mode)
        assert not res.inconclusive
        outcomes[mode] = res.sat
        if res.sat:
            assert represents(res.witness, p)
            assert is_proper(res.witness) or not mode.proper
            assert is_unit(res.witness) or not mode.unit
    # unit representations are proper, proper ones are representations
    assert outcomes[Mode.ANY] >= outcomes[Mode.PROPER] >= outcomes[Mode.UNIT]

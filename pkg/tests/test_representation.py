from fractions import Fraction

import pytest

from trapord.corpus import JAW_BOTTOM_CHAIN, sample_representation
from trapord.poset import antichain, chain
from trapord.representation import (
    RepresentationError,
    RepresentationFormatError,
    Trapezoid,
    TrapezoidRepresentation,
    base_lengths,
    bottom_interval_order,
    check_intersection_identity,
    format_representation,
    induced_order,
    is_proper,
    is_unit,
    normalize_unit,
    parse_representation,
    represents,
    to_fraction,
    top_interval_order,
    trapezoid_contains,
    unit_defect,
)

rep = TrapezoidRepresentation.from_coords


def test_disjoint_precedes():
    p = induced_order(rep({"x": (0, 1, 0, 1), "y": (2, 3, 2, 3)}))
    assert p.less("x", "y")


def test_crossing_is_incomparable():
    r = rep({"x": (0, 1, 2, 3), "y": (2, 3, 0, 1)})
    assert not induced_order(r).comparable("x", "y")
    assert top_interval_order(r).less("x", "y")
    assert bottom_interval_order(r).less("y", "x")


def test_touching_counts_as_intersecting():
    r = rep({"x": (0, 1, 0, 1), "y": (1, 2, 5, 6)})
    assert not induced_order(r).comparable("x", "y")


def test_identical_intervals_give_antichain():
    r = rep({k: (0, 1, 0, 1) for k in "abc"})
    assert top_interval_order(r) == antichain("a", "b", "c")
    assert bottom_interval_order(r) == antichain("a", "b", "c")


def test_jaw_sample_follows_chain(jaw):
    r = sample_representation("jaw")
    assert all(a.holds(r) for a in JAW_BOTTOM_CHAIN)
    assert represents(r, jaw)
    assert check_intersection_identity(r)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ((0, 3, 0, 3), (1, 2, 1, 2), True),
        ((0, 1, 0, 1), (0, 1, 0, 1), True),
        ((0, 3, 0, 1), (1, 2, 0, 2), False),
    ],
)
def test_contains(x, y, expected):
    assert trapezoid_contains(rep({"x": x, "y": y}), "x", "y") is expected


def test_contains_unknown_element():
    with pytest.raises(RepresentationError):
        trapezoid_contains(rep({"x": (0, 1, 0, 1)}), "x", "q")


def test_proper():
    assert is_proper(rep({"x": (0, 1, 0, 1), "y": (1, 2, 1, 2)}))
    assert not is_proper(rep({"x": (0, 3, 0, 3), "y": (1, 2, 1, 2)}))
    # equal trapezoids on distinct elements are allowed
    assert is_proper(rep({"x": (0, 1, 0, 1), "y": (0, 1, 0, 1)}))


def test_unit():
    assert is_unit(rep({"x": (0, 1, 0, 1), "y": (5, 6, 2, 3)}))
    r = rep({"x": (0, Fraction(3, 2), 0, Fraction(1, 2)), "y": (0, Fraction(1, 2), 0, Fraction(3, 2))})
    assert is_unit(r) and unit_defect(r) == 0
    r = rep({"x": (0, 1, 0, 1), "y": (0, Fraction(1, 2), 0, Fraction(1, 2))})
    assert not is_unit(r) and unit_defect(r) == 1


def test_base_lengths():
    assert base_lengths(rep({"x": (0, 3, 1, 2)})) == {"x": (3, 1)}
    assert Trapezoid.of(0, 3, 1, 2).area == 2


def test_normalize_unit():
    r = rep({"x": (0, 2, 0, 2), "y": (3, 5, 3, 5)})
    n = normalize_unit(r)
    assert all(t.t + t.b == 2 for t in n.values())
    assert n["y"].L == Fraction(3, 2)
    assert induced_order(n) == induced_order(r)
    already = rep({"x": (0, 1, 0, 1)})
    assert normalize_unit(already) == already


def test_normalize_errors():
    with pytest.raises(RepresentationError, match="not unit"):
        normalize_unit(rep({"x": (0, 1, 0, 1), "y": (0, 2, 0, 2)}))
    with pytest.raises(RepresentationError, match="degenerate"):
        normalize_unit(rep({"x": (0, 0, 1, 1)}))


def test_represents():
    c = rep({"a": (0, 1, 0, 1), "b": (2, 3, 2, 3)})
    assert represents(c, chain("a", "b"))
    assert not represents(c, antichain("a", "b"))
    with pytest.raises(ValueError):
        represents(c, antichain("a", "q"))


def test_reversed_interval_rejected():
    with pytest.raises(RepresentationError):
        rep({"x": (2, 1, 0, 1)})


@pytest.mark.parametrize(
    "text, want",
    [("3", Fraction(3)), ("-2/4", Fraction(-1, 2)), ("0.125", Fraction(1, 8)), ("1.", Fraction(1))],
)
def test_exact_coordinates(text, want):
    assert to_fraction(text) == want


@pytest.mark.parametrize("bad", ["1e3", "abc", "1/0.5", ""])
def test_bad_coordinates(bad):
    with pytest.raises(RepresentationError):
        to_fraction(bad)


def test_floats_refused():
    with pytest.raises(RepresentationError):
        to_fraction(0.5)


def test_trep_roundtrip():
    r = rep({"a": (0, "1/3", "0.5", 2), "b": (1, 1, 3, 4)})
    assert parse_representation(format_representation(r)) == r


@pytest.mark.parametrize(
    "text, line",
    [
        ("trap a 0 1 0\n", 1),
        ("trap a 0 1 0 1\ntrap a 0 1 0 1\n", 2),
        ("# x\ntrap a 2 1 0 1\n", 2),
        ("trap a 0 1 0 zz\n", 1),
        ("box a 0 1 0 1\n", 1),
    ],
)
def test_trep_errors(text, line):
    with pytest.raises(RepresentationFormatError) as info:
        parse_representation(text)
    assert info.value.line == line


def test_flip_swaps_baselines():
    r = rep({"x": (0, 1, 2, 3)})
    assert r.flip()["x"].coords() == (2, 3, 0, 1)

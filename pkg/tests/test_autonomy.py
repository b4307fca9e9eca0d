import pytest
from hypothesis import given, settings

from trapord.autonomy import (
    ClosureLimitExceeded,
    autonomous_sets,
    autonomous_sets_naive,
    graph_property_holds,
    is_autonomous,
    reversal_closure,
    reverse_module,
)
from trapord.poset import (
    PosetError,
    antichain,
    chain,
    dual,
    incomparability_graph,
    is_isomorphic,
    make_poset,
)
from trapord.solver import solve_poset

from strategies import posets


def test_is_autonomous_basics():
    c = chain("a", "b", "c")
    assert is_autonomous(c, {"a"})
    assert is_autonomous(c, {"a", "b", "c"})
    assert not is_autonomous(c, {"a", "c"})
    with pytest.raises(PosetError):
        is_autonomous(c, {"q"})


def test_is_autonomous_on_improper(improper):
    assert is_autonomous(improper, {"b", "c"})


def test_antichain_modules():
    assert autonomous_sets(antichain("a", "b")) == []  # the whole set is trivial
    assert autonomous_sets(antichain("a", "b"), nontrivial_only=False) == [
        frozenset("a"), frozenset("b"), frozenset("ab")
    ]


def test_improper_modules(improper):
    assert set(autonomous_sets(improper)) == {frozenset("bc"), frozenset("xy")}


def test_pnu_modules(pnu):
    got = autonomous_sets(pnu)
    assert got == [frozenset("bc"), frozenset("fg"), frozenset("xy"), frozenset("yz"), frozenset("xyz")]


@pytest.mark.parametrize("name", ["jaw", "improper", "pnu"])
def test_fast_scan_matches_naive(name, request):
    p = request.getfixturevalue(name)
    assert set(autonomous_sets(p)) == set(autonomous_sets_naive(p))


def test_scan_size_limit():
    with pytest.raises(PosetError):
        autonomous_sets(antichain(*[f"v{i}" for i in range(26)]))


def test_reverse_module_examples(improper):
    c = chain("a", "b", "c")
    assert reverse_module(c, {"b"}).same_order(c)
    assert reverse_module(c, set(c.elements)).same_order(dual(c))
    assert is_isomorphic(reverse_module(improper, {"b", "c"}), improper)
    with pytest.raises(PosetError):
        reverse_module(c, {"a", "c"})


def test_reversal_closure_small():
    c = chain("a", "b")
    members = reversal_closure(c)
    assert len(members) == 2 and members[1].same_order(dual(c))
    assert len(reversal_closure(antichain("a", "b", "c"))) == 1


def test_closure_limit():
    with pytest.raises(ClosureLimitExceeded):
        reversal_closure(chain("a", "b", "c"), limit=1)


def test_improper_closure_isomorphic(improper):
    members = reversal_closure(improper)
    assert all(is_isomorphic(q, improper) for q in members)
    g = incomparability_graph(improper)
    assert all(incomparability_graph(q) == g for q in members)


def test_graph_property_on_chain():
    assert graph_property_holds(chain("a", "b", "c"), lambda q: solve_poset(q).sat)


@settings(max_examples=200)
@given(posets(max_n=6))
def test_modules_and_reversal(p):
    mods = autonomous_sets(p, nontrivial_only=False)
    assert set(mods) == set(autonomous_sets_naive(p, nontrivial_only=False))
    g = incomparability_graph(p)
    for m in mods:
        assert is_autonomous(p, m)
        r = reverse_module(p, m)
        assert incomparability_graph(r) == g
        assert reverse_module(r, m).same_order(p)

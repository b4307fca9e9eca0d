import pytest

from trapord.constraints import (
    Atom,
    Endpoint,
    Mode,
    compile_system,
    eq,
    incomparability_clauses,
    le,
    lt,
    negate_conjunction,
    no_containment_clause,
    parse_chain,
    parse_fact,
)
from trapord.poset import antichain, chain


def test_chain_system():
    cs = compile_system(chain("a", "b"), "any")
    assert len(cs.hard) == 6  # L<=R and l<=r per element, plus two precedence atoms
    assert lt("R", "a", "L", "b") in cs.hard and lt("r", "a", "l", "b") in cs.hard
    assert cs.clauses == ()


def test_antichain_system():
    cs = compile_system(antichain("a", "b"), "any")
    assert len(cs.clauses) == 2
    assert set(cs.clauses) == set(incomparability_clauses("a", "b"))


def test_jaw_system_counts(jaw):
    cs = compile_system(jaw, "any")
    n_less = len(jaw.pairs())
    n_inc = len(jaw.incomparable_pairs())
    assert len(cs.hard) == 2 * len(jaw) + 2 * n_less
    assert len(cs.clauses) == 2 * n_inc


def test_proper_adds_two_clauses_per_incomparable_pair(jaw):
    n_inc = len(jaw.incomparable_pairs())
    assert len(compile_system(jaw, "proper").clauses) == 4 * n_inc


def test_unit_equations(jaw):
    cs = compile_system(jaw, Mode.UNIT)
    assert len(cs.unit_equations) == len(jaw)
    assert compile_system(jaw, "any").unit_equations == ()


def test_containment_clause_shape():
    c = no_containment_clause("x", "y")
    assert len(c) == 5 and len(c[-1]) == 4
    assert all(a.kind == "eq" for a in c[-1])
    assert len(no_containment_clause("x", "y", equality_branch=False)) == 4


def test_negation():
    assert lt("R", "a", "L", "b").negation() == (le("L", "b", "R", "a"),)
    assert le("R", "a", "L", "b").negation() == (lt("L", "b", "R", "a"),)
    assert len(eq("R", "a", "L", "b").negation()) == 2
    clause = negate_conjunction([lt("R", "a", "L", "b"), le("l", "a", "r", "b")])
    assert clause == ((le("L", "b", "R", "a"),), (lt("r", "b", "l", "a"),))


def test_parse_fact():
    fact = parse_fact("R(E)<L(2), L(2)<=R(2),l(x)=r(y)")
    assert fact == (lt("R", "E", "L", "2"), le("L", "2", "R", "2"), eq("l", "x", "r", "y"))


@pytest.mark.parametrize("bad", ["", "R(E)<", "Q(E)<L(2)", "R(E)>L(2)", "R E < L 2"])
def test_parse_fact_errors(bad):
    with pytest.raises(ValueError):
        parse_fact(bad)


def test_parse_chain():
    atoms = parse_chain("r(B)<l(C)<=r(1)")
    assert atoms == (lt("r", "B", "l", "C"), le("l", "C", "r", "1"))


def test_flip():
    a = Atom("lt", Endpoint("R", "x"), Endpoint("l", "y"))
    assert a.flipped() == lt("r", "x", "L", "y")
    assert a.flipped().flipped() == a


def test_unknown_elements_in_extra_clauses():
    with pytest.raises(ValueError):
        compile_system(chain("a", "b"), "any", [((lt("R", "a", "L", "q"),),)])

import shutil

import pytest

from trapord.corpus import (
    JAW_BOTTOM_CHAIN,
    CorpusError,
    corpus_path,
    load_corpus,
    sample_representation,
)
from trapord.poset import find_embeddings, is_isomorphic, load_poset, restriction
from trapord.representation import is_proper, is_unit, represents, trapezoid_contains


def test_sizes():
    assert len(load_corpus("jaw").poset) == 9
    assert set(load_corpus("improper").poset.elements) == set("123abcdwxyzN")
    assert set(load_corpus("pnu").poset.elements) == set("1234abcdefghxyz")


@pytest.mark.parametrize("name", ["jaw", "improper", "pnu"])
def test_every_enforced_fact_holds(name):
    entry = load_corpus(name)
    for fact in entry.enforced_facts:
        assert fact.holds(entry.poset), fact


def test_figure_only_fact_is_not_enforced():
    jaw = load_corpus("jaw")
    flagged = [f for f in jaw.facts if f.figure_only]
    assert [str(f) for f in flagged] == ["C<D"]
    assert flagged[0].holds(jaw.poset)


@pytest.mark.parametrize("name", ["improper", "pnu"])
def test_jaw_restrictions(name):
    jaw = load_corpus("jaw").poset
    entry = load_corpus(name)
    found = find_embeddings(jaw, entry.poset)
    for emb in entry.embeddings:
        assert emb in found
        assert is_isomorphic(restriction(entry.poset, emb.values()), jaw)


def test_improper_has_exactly_two_jaw_copies(improper, jaw):
    assert len(find_embeddings(jaw, improper)) == 2


def test_samples():
    jaw = sample_representation("jaw")
    assert all(a.holds(jaw) for a in JAW_BOTTOM_CHAIN)
    imp = sample_representation("improper")
    assert not is_proper(imp) and trapezoid_contains(imp, "2", "N")
    pnu = sample_representation("pnu")
    assert is_proper(pnu) and not is_unit(pnu)
    assert represents(pnu, load_corpus("pnu").poset)


@pytest.mark.parametrize("name", ["jaw", "improper", "pnu"])
def test_rebuild_is_fixed_point(name):
    entry = load_corpus(name)
    again = load_poset(corpus_path(name))
    assert again.elements == entry.poset.elements and again.rel == entry.poset.rel


def test_unknown_name():
    with pytest.raises(CorpusError):
        load_corpus("nope")


def _copy_data(tmp_path):
    for name in ("jaw", "improper", "pnu"):
        for suffix in (".pos", ".trep"):
            shutil.copy(corpus_path(name, suffix), tmp_path / f"{name}{suffix}")


def test_directory_override(tmp_path):
    _copy_data(tmp_path)
    assert load_corpus("pnu", tmp_path).poset.same_order(load_corpus("pnu").poset)


def test_broken_fact_rejected(tmp_path):
    _copy_data(tmp_path)
    path = tmp_path / "jaw.pos"
    path.write_text(path.read_text().replace("rel E F", "rel F E"))
    with pytest.raises(CorpusError):
        load_corpus("jaw", tmp_path)


def test_missing_jaw_copy_rejected(tmp_path):
    _copy_data(tmp_path)
    path = tmp_path / "pnu.pos"
    path.write_text(path.read_text().replace("rel a b\n", ""))
    with pytest.raises(CorpusError, match="jaw copy|sample"):
        load_corpus("pnu", tmp_path)


def test_bad_sample_rejected(tmp_path):
    _copy_data(tmp_path)
    shutil.copy(corpus_path("jaw", ".trep"), tmp_path / "improper.trep")
    with pytest.raises(CorpusError):
        load_corpus("improper", tmp_path)

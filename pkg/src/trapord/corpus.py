"""The three built-in orders, their checked facts and sample representations.

Each order ships as a ``.pos`` file with a matching ``.trep`` sample.  The
facts below are the relations stated in prose about each order; loading an
entry re-checks all of them, so a transcription error cannot slip through.
Facts marked ``figure_only`` were read off a drawing (or derived from other
facts) rather than stated, and are reported but not enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .constraints import parse_chain
from .poset import Poset, PosetError, find_embeddings, parse_poset
from .representation import (
    RepresentationError,
    TrapezoidRepresentation,
    is_proper,
    is_unit,
    parse_representation,
    represents,
    trapezoid_contains,
)

NAMES = ("jaw", "improper", "pnu")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Fact:
    """``kind`` is ``<`` (left below right), ``||`` or ``pred`` (exact predecessor set)."""

    kind: str
    left: str
    right: str
    anchor: str
    figure_only: bool = False

    def holds(self, p: Poset) -> bool:
        if self.kind == "<":
            return p.less(self.left, self.right)
        if self.kind == "||":
            return self.left != self.right and not p.comparable(self.left, self.right)
        if self.kind == "pred":
            want = set(self.right.split(",")) if self.right else set()
            return p.predecessors(self.left) == want
        raise CorpusError(f"unknown fact kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == "pred":
            return f"Pred({self.left})={{{self.right}}}"
        return f"{self.left}{self.kind}{self.right}"


def _facts(anchor: str, *texts: str, figure_only: bool = False) -> list[Fact]:
    out = []
    for text in texts:
        if text.startswith("Pred("):
            left, right = text[5:].split(")=")
            out.append(Fact("pred", left, right.strip("{}"), anchor, figure_only))
            continue
        kind = "||" if "||" in text else "<"
        left, right = text.split(kind)
        out.append(Fact(kind, left, right, anchor, figure_only))
    return out


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    poset: Poset
    facts: tuple[Fact, ...]
    # jaw element -> host element, for copies of the jaw order that must exist
    embeddings: tuple[dict[str, str], ...]
    # the stated list of non-trivial modules, or None when nothing is stated
    autonomous: tuple[frozenset[str], ...] | None
    sample: TrapezoidRepresentation | None = None
    # advertised predicates of the sample: {"proper": bool, "unit": bool}
    sample_flags: dict[str, bool] = field(default_factory=dict)
    # (inner elements, bottom host, top host) for the unit-impossibility count
    nesting: tuple[tuple[str, ...], str, str] | None = None

    @property
    def enforced_facts(self) -> tuple[Fact, ...]:
        return tuple(f for f in self.facts if not f.figure_only)


# the forced endpoint pattern of the jaw order, bottom-baseline version;
# the top version swaps L,R with l,r throughout
JAW_BOTTOM_CHAIN = parse_chain(
    "r(B)<l(C)<=r(1)<l(2)<=r(E)<l(D)<=r(2)<l(3)<=r(F)<l(G)"
) + parse_chain("R(E)<L(2)<=R(2)<L(D)")
JAW_TOP_CHAIN = tuple(a.flipped() for a in JAW_BOTTOM_CHAIN)

_JAW_ROLES = ("1", "2", "3", "B", "C", "D", "E", "F", "G")


def _emb(*images: str) -> dict[str, str]:
    return dict(zip(_JAW_ROLES, images))


_ENTRIES = {
    "jaw": dict(
        facts=[
            *_facts("1 < 2 < 3 is a chain", "1<2", "2<3"),
            *_facts("D is over 1 but incomparable to 2 and 3", "1<D", "D||2", "D||3"),
            *_facts("B is below D, yet incomparable to 3", "B<D", "B||3"),
            *_facts("C || 1", "C||1"),
            *_facts("E || 2, but E < 3", "E||2", "E<3"),
            *_facts("E || C", "E||C"),
            *_facts("E < F < G", "E<F", "F<G"),
            *_facts("G || 1", "G||1"),
            *_facts("F || D", "F||D"),
            *_facts("G || B", "G||B"),
            *_facts("marked chain inequalities", "B<C", "E<D"),
            *_facts("needed for {b,c} to be a module of the improper order", "C<D", figure_only=True),
        ],
        embeddings=(),
        autonomous=None,
        sample_flags={},
    ),
    "improper": dict(
        facts=[
            *_facts("N is clamped by the jaws on both sides", "a<N", "N<z", "w<N", "N<d"),
            *_facts("N is above 1 and level with 2", "1<N", "2||N"),
            *_facts("the only predecessor of b is a", "Pred(b)={a}"),
            *_facts("3, z and N are above a but incomparable to b",
                    "a<3", "a<z", "3||b", "z||b", "N||b"),
            *_facts("w is below N but incomparable to b", "w||b"),
            *_facts("a is incomparable to 2", "a||2"),
        ],
        embeddings=(
            _emb("1", "2", "3", "b", "c", "d", "w", "x", "y"),
            _emb("1", "2", "3", "x", "y", "z", "a", "b", "c"),
        ),
        autonomous=(frozenset("bc"), frozenset("xy")),
        sample_flags={"proper": False, "unit": False},
    ),
    "pnu": dict(
        facts=[
            *_facts("the inserted chain", "x<y", "y<z"),
            *_facts("the chain sits between the teeth d and e", "e<x", "z<d"),
            *_facts("the chain sits between the teeth a and h", "a<x", "z<h"),
            *_facts("the chain is level with both hosts", "x||2", "z||2", "x||3", "z||3"),
        ],
        embeddings=(
            _emb("1", "2", "3", "b", "c", "d", "e", "f", "g"),
            _emb("2", "3", "4", "f", "g", "h", "a", "b", "c"),
        ),
        autonomous=(
            frozenset("bc"), frozenset("fg"), frozenset("xy"), frozenset("yz"), frozenset("xyz"),
        ),
        sample_flags={"proper": True, "unit": False},
        nesting=(("x", "y", "z"), "2", "3"),
    ),
}


def _read(name: str, suffix: str, directory: Path | None) -> str | None:
    if directory is not None:
        path = Path(directory) / f"{name}{suffix}"
        return path.read_text() if path.exists() else None
    res = resources.files("trapord.data").joinpath(f"{name}{suffix}")
    return res.read_text() if res.is_file() else None


def validate(entry: CorpusEntry, jaw: Poset | None = None) -> list[str]:
    """Problems with ``entry``; empty when every enforced fact holds."""
    p = entry.poset
    problems = []
    for fact in entry.enforced_facts:
        try:
            ok = fact.holds(p)
        except PosetError as exc:
            problems.append(f"{fact}: {exc}")
            continue
        if not ok:
            problems.append(f"{fact} fails ({fact.anchor})")
    if entry.embeddings:
        if jaw is None:
            raise CorpusError("the jaw order is needed to check embeddings")
        found = find_embeddings(jaw, p)
        for emb in entry.embeddings:
            if emb not in found:
                problems.append(f"missing jaw copy {emb}")
    if entry.sample is not None:
        rep = entry.sample
        if set(rep.elements) != set(p.elements) or not represents(rep, p):
            problems.append("sample representation does not induce the order")
        else:
            flags = entry.sample_flags
            if "proper" in flags and is_proper(rep) != flags["proper"]:
                problems.append(f"sample is_proper should be {flags['proper']}")
            if "unit" in flags and is_unit(rep) != flags["unit"]:
                problems.append(f"sample is_unit should be {flags['unit']}")
            if entry.name == "improper" and not trapezoid_contains(rep, "2", "N"):
                problems.append("sample should nest N inside 2")
            if entry.name == "jaw" and not all(a.holds(rep) for a in JAW_BOTTOM_CHAIN):
                problems.append("sample should follow the bottom jaw chain")
    return problems


def load_corpus(name: str, directory: str | Path | None = None) -> CorpusEntry:
    """Load and validate a built-in order; ``directory`` overrides the data files."""
    if name not in _ENTRIES:
        raise CorpusError(f"unknown corpus entry {name!r}; choose from {', '.join(NAMES)}")
    directory = Path(directory) if directory is not None else None
    text = _read(name, ".pos", directory)
    if text is None:
        raise CorpusError(f"no data file for {name!r}")
    try:
        poset = parse_poset(text)
        rep_text = _read(name, ".trep", directory)
        sample = parse_representation(rep_text) if rep_text is not None else None
    except (PosetError, RepresentationError) as exc:
        raise CorpusError(f"{name}: {exc}") from exc
    known = _ENTRIES[name]
    entry = CorpusEntry(
        name, poset, tuple(known["facts"]), known["embeddings"], known["autonomous"],
        sample, known["sample_flags"], known.get("nesting"),
    )
    jaw = None
    if entry.embeddings:
        jaw = poset if name == "jaw" else load_corpus("jaw", directory).poset
    problems = validate(entry, jaw)
    if problems:
        raise CorpusError(f"{name}: " + "; ".join(problems))
    return entry


def sample_representation(name: str, directory: str | Path | None = None) -> TrapezoidRepresentation:
    entry = load_corpus(name, directory)
    if entry.sample is None:
        raise CorpusError(f"no sample representation for {name!r}")
    return entry.sample


def corpus_path(name: str, suffix: str = ".pos") -> Path:
    return Path(str(resources.files("trapord.data").joinpath(f"{name}{suffix}")))


__all__ = [
    "JAW_BOTTOM_CHAIN", "JAW_TOP_CHAIN", "NAMES", "CorpusEntry", "CorpusError", "Fact", "corpus_path", "load_corpus",
    "sample_representation", "validate",
]

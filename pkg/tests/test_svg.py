from pathlib import Path

import pytest

from trapord.corpus import sample_representation
from trapord.representation import TrapezoidRepresentation
from trapord.svg import BOTTOM_Y, MARGIN, TOP_Y, WIDTH, render_svg, to_svg

GOLDEN = Path(__file__).parent / "golden"


def test_empty_has_only_baselines():
    svg = to_svg(TrapezoidRepresentation([]))
    assert svg.count('class="baseline"') == 2
    assert "polygon" not in svg


def test_single_trapezoid_corners():
    r = TrapezoidRepresentation.from_coords({"a": (1, 3, 0, 4)})
    svg = to_svg(r)
    # model x 0..4 maps to MARGIN..WIDTH-MARGIN
    s = (WIDTH - 2 * MARGIN) / 4
    pts = [(MARGIN + 1 * s, TOP_Y), (MARGIN + 3 * s, TOP_Y), (MARGIN + 4 * s, BOTTOM_Y), (MARGIN, BOTTOM_Y)]
    want = " ".join(f"{x:g},{y}" for x, y in pts)
    assert f'points="{want}"' in svg
    assert svg.count("<polygon") == 1


def test_deterministic(tmp_path):
    r = sample_representation("pnu")
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg(r, a)
    render_svg(r, b)
    assert a.read_bytes() == b.read_bytes()


def test_jaw_golden():
    r = sample_representation("jaw")
    assert to_svg(r, title="jaw") == (GOLDEN / "jaw.svg").read_text()


def test_unwritable(tmp_path):
    with pytest.raises(OSError):
        render_svg(TrapezoidRepresentation([]), tmp_path / "missing" / "x.svg")

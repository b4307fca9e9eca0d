"""Trapezoid orders: representations, exact representability search, modules."""

from .autonomy import (
    autonomous_sets,
    graph_property_holds,
    is_autonomous,
    reversal_closure,
    reverse_module,
)
from .constraints import Mode, compile_system, parse_chain, parse_fact
from .corpus import load_corpus, sample_representation
from .poset import (
    Poset,
    PosetError,
    dual,
    find_embeddings,
    incomparability_graph,
    incomparable,
    intersect_orders,
    is_isomorphic,
    load_poset,
    make_poset,
    restriction,
)
from .representation import (
    Trapezoid,
    TrapezoidRepresentation,
    bottom_interval_order,
    induced_order,
    is_proper,
    is_unit,
    load_representation,
    normalize_unit,
    represents,
    top_interval_order,
    trapezoid_contains,
    unit_defect,
)
from .solver import (
    Inconclusive,
    SolveOptions,
    SolveResult,
    certify_unit_impossible_by_nesting,
    forced,
    forced_disjunction,
    solve,
    solve_poset,
)
from .svg import render_svg

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

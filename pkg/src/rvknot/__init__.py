"""Parity invariants of oriented rigid-vertex (RV) 4-valent graphs.

Typical use::

    from rvknot import parse_gauss_code, realize, parity_assignment, parity_resolve, f_polynomial

    graph = realize(parse_gauss_code("1 2 3 1 3 2"))
    parity = parity_assignment(graph)
    link = parity_resolve(graph, parity)
    print(f_polynomial(link))
"""

from .build import braid_closure
from .codec import (
    GaussCode, Token, canonical_form, codes_equivalent, emit_gauss_code, load_diagram,
    parse_diagram, parse_gauss_code, realize, serialize_diagram,
)
from .core import (
    Diagram, Edge, NodeType, PortRef, Site, TransitPolicy, classify_node_orientation,
    crossing_sign, mirror, reverse, traverse_components, validate,
)
from .errors import CapExceeded, InputError, RVKnotError
from .invariants import (
    CompareConfig, CompareVerdict, InvariantBundle, compare, f_polynomial, invariant_bundle,
    kauffman_bracket, linking_matrix, writhe,
)
from .laurent import LaurentPoly
from .moves import MoveSpec, apply_move, scramble, simplify
from .parity import (
    Parity, ParityMap, ParityPolicy, link_parity, nodal_distance, nodal_parity, parity_assignment,
)
from .render import render_chord_svg
from .rewrite import ParityRule, TangleKind, parity_resolve, replace_node, resolution_set
from .rna import FoldReport, FoldSpec, classify_fold, fold_to_graph, parse_fold, unfold

__version__ = "0.1.0"

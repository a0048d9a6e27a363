import random
from fractions import Fraction

import pytest

from rvknot import gallery
from rvknot.build import braid_closure
from rvknot.codec import parse_gauss_code, realize
from rvknot.core import mirror
from rvknot.errors import NodePresent, TooManyCrossings
from rvknot.invariants import (
    CompareConfig, InvariantBundle, compare, component_count, f_polynomial, invariant_bundle,
    kauffman_bracket, linking_matrix, resolution_polys, writhe,
)
from rvknot.laurent import LaurentPoly
from rvknot.moves import MoveSpec, apply_move
from rvknot.rewrite import ParityRule, TangleKind

from helpers import random_braid, random_realized
from oracles import naive_bracket, naive_f, naive_writhe

TREFOIL_F = LaurentPoly({-16: -1, -12: 1, -4: 1})
FIG8_F = LaurentPoly({-8: 1, -4: -1, 0: 1, 4: -1, 8: 1})


def test_known_knots():
    assert f_polynomial(gallery.trefoil()) == TREFOIL_F
    assert f_polynomial(mirror(gallery.trefoil())) == TREFOIL_F.invert_variable()
    assert f_polynomial(gallery.figure_eight()) == FIG8_F
    assert f_polynomial(gallery.unknot()) == LaurentPoly.one()
    assert f_polynomial(gallery.hopf()) == LaurentPoly({-2: -1, -10: -1})


def test_virtual_trefoil_value():
    assert f_polynomial(gallery.virtual_trefoil()) == LaurentPoly({-10: -1, -6: 1, -4: 1})


def test_bracket_matches_oracle_on_random_diagrams():
    rng = random.Random(61)
    for case in range(60):
        if case % 2:
            d = random_realized(rng, rng.randint(1, 8))
        else:
            d = random_braid(rng, 4, 9, virtual_rate=0.2)
        assert kauffman_bracket(d) == naive_bracket(d)
        assert writhe(d) == naive_writhe(d)
        assert f_polynomial(d) == naive_f(d)


def test_disjoint_union_multiplies_by_delta():
    d = braid_closure(3, "1 1 1")  # trefoil plus an untouched strand
    assert f_polynomial(d) == TREFOIL_F * LaurentPoly.delta()


def test_crossing_cap():
    d = braid_closure(2, "1 " * 12)
    with pytest.raises(TooManyCrossings):
        f_polynomial(d, max_crossings=10)
    assert f_polynomial(d, max_crossings=12) == f_polynomial(d)


def test_nodes_rejected():
    with pytest.raises(NodePresent):
        f_polynomial(gallery.nodal_trefoil())
    with pytest.raises(NodePresent):
        linking_matrix(gallery.nodal_trefoil())


def test_linking_matrices():
    assert linking_matrix(gallery.trefoil()) == []
    assert linking_matrix(gallery.hopf()) == [[0, 1], [1, 0]]
    assert linking_matrix(mirror(gallery.hopf())) == [[0, -1], [-1, 0]]
    assert linking_matrix(gallery.borromean()) == [[0, 0, 0]] * 3
    half = linking_matrix(realize(parse_gauss_code("O1+ / U1+")))
    assert half == [[0, Fraction(1, 2)], [Fraction(1, 2), 0]]
    assert component_count(braid_closure(3, "1 1")) == 3


def test_bundle_json_round_trip():
    for d in (gallery.borromean(), realize(parse_gauss_code("O1+ / U1+")), gallery.trefoil()):
        b = invariant_bundle(d)
        assert InvariantBundle.from_json(b.to_json()) == b


def test_compare_witness_order():
    g, h = gallery.odd_pair()
    neg = ParityRule(TangleKind.NEG_CROSSING, TangleKind.NEG_CROSSING)
    assert compare(g, h, CompareConfig(rule=neg)).witness == "f_poly"
    same = compare(g, g)
    assert same.verdict == "Inconclusive" and same.witness is None
    knot_vs_link = compare(gallery.trefoil(), gallery.hopf())
    assert knot_vs_link.witness == "component_count"
    assert compare(gallery.hopf(), mirror(gallery.hopf())).witness == "linking_matrix"
    nodal = compare(g, gallery.code_123132_graph())
    assert nodal.witness == "parity_profile"


def test_compare_is_symmetric_in_verdict():
    rng = random.Random(62)
    for _ in range(40):
        a = random_braid(rng, 3, 6)
        b = random_braid(rng, 3, 6)
        assert compare(a, b).verdict == compare(b, a).verdict


def test_compare_ignores_writhe_and_reordering():
    d = gallery.trefoil()
    kinked = apply_move(d, MoveSpec("R1+", (list(d.edges[0].tail),), {"sign": 1}))
    assert writhe(kinked) == writhe(d) + 1
    assert compare(d, kinked).verdict == "Inconclusive"
    a = braid_closure(3, "1 1 2 2 2 2")
    b = braid_closure(3, "2 2 1 1 1 1")
    assert compare(a, b).witness is None


def test_resolution_set_comparison():
    d = gallery.nodal_trefoil()
    counts = resolution_polys(d)
    assert sum(counts.values()) == 27
    cfg = CompareConfig(include_resolution_set=True)
    verdict = compare(d, d, cfg)
    assert verdict.verdict == "Inconclusive"
    assert verdict.details["resolution_set_size"] == [27, 27]

import random

import pytest

from rvknot import gallery
from rvknot.codec import emit_gauss_code, parse_gauss_code, realize
from rvknot.errors import CrossComponentNode, MultiComponent, SingleComponent, UnknownLabel
from rvknot.parity import (
    Parity, ParityMap, ParityPolicy, link_parity, nodal_distance, nodal_parity, parity_assignment,
)

from helpers import random_knot_code
from oracles import naive_nodal_distance


def test_nodal_distance_small_words():
    code = parse_gauss_code("1 2 3 1 3 2")
    assert [nodal_distance(code, k) for k in (1, 2, 3)] == [2, 3, 1]
    assert nodal_distance(parse_gauss_code("1 1"), 1) == 0


def test_crossing_passes_do_not_count():
    code = parse_gauss_code("1 O5+ 2 U5+ 1 2")
    assert nodal_distance(code, 1) == 1
    assert nodal_parity(code).as_strings() == {1: "odd", 2: "odd"}
    with pytest.raises(UnknownLabel):
        nodal_distance(code, 5)


def test_nodal_distance_errors():
    with pytest.raises(MultiComponent):
        nodal_parity(parse_gauss_code("1 1 / 2 2"))
    with pytest.raises(UnknownLabel):
        nodal_distance(parse_gauss_code("1 1"), 9)


def test_nodal_distance_matches_oracle_on_random_words():
    rng = random.Random(31)
    for _ in range(300):
        code = parse_gauss_code(random_knot_code(rng, rng.randint(1, 9), kinds=("node", "crossing")))
        word = [t.label for t in code.components[0] if t.kind != "crossing"]
        for label in set(word):
            assert nodal_distance(code, label) == naive_nodal_distance(word, label)


def test_distance_is_rotation_and_reversal_invariant_mod_two():
    rng = random.Random(32)
    for _ in range(200):
        word = random_knot_code(rng, rng.randint(1, 8), kinds=("node",)).split()
        base = nodal_parity(parse_gauss_code(" ".join(word)))
        k = rng.randrange(len(word))
        rotated = nodal_parity(parse_gauss_code(" ".join(word[k:] + word[:k])))
        backwards = nodal_parity(parse_gauss_code(" ".join(reversed(word))))
        assert base == rotated == backwards


def test_diagram_parity_agrees_with_code():
    rng = random.Random(33)
    for _ in range(100):
        text = random_knot_code(rng, rng.randint(1, 7), kinds=("node", "crossing"))
        code = parse_gauss_code(text)
        d = realize(code)
        if not d.node_ids():
            continue
        from_diagram = parity_assignment(d)
        from_emit = nodal_parity(emit_gauss_code(d))
        assert from_diagram.as_strings() == nodal_parity(code).as_strings()
        assert from_emit.profile() == from_diagram.profile()


def test_link_parity_on_two_component_graph():
    d = gallery.linked_component_graph()
    assert link_parity(d).as_strings() == {1: "odd", 2: "even", 3: "odd"}
    with pytest.raises(CrossComponentNode) as info:
        parity_assignment(d)
    assert info.value.label == 2
    assert parity_assignment(d, ParityPolicy.LINK_PARITY) == link_parity(d)


def test_link_parity_needs_two_components():
    with pytest.raises(SingleComponent):
        link_parity(gallery.nodal_trefoil())


def test_parity_map_helpers():
    pm = ParityMap({1: Parity.EVEN, 2: Parity.ODD, 3: Parity.ODD}, ParityPolicy.NODAL_DISTANCE)
    assert pm.profile() == (1, 2)
    assert pm.labels() == [1, 2, 3]
    assert ParityMap.from_json(pm.to_json()) == pm
    assert Parity.of(4) is Parity.EVEN and Parity.of(-1) is Parity.ODD


def test_link_parity_survives_mirror():
    from rvknot.core import mirror

    for d in (gallery.linked_component_graph(), gallery.borromean_graph(), gallery.unlink_graph()):
        assert link_parity(mirror(d)) == link_parity(d)

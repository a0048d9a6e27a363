import random
from collections import Counter

import pytest

from rvknot import gallery
from rvknot.build import braid_closure
from rvknot.core import crossing_sign, validate
from rvknot.errors import InputError, NodePresent, PatternMismatch
from rvknot.invariants import f_polynomial, resolution_polys
from rvknot.moves import (
    MOVE_NAMES, MoveSpec, apply_move, faces, find_bigons, find_flypes, find_kinks, find_triangles,
    iv_applicable, r3_applicable, remove_virtuals, scramble, simplify,
)
from rvknot.parity import parity_assignment

from helpers import random_braid


def test_face_count_matches_euler_formula():
    for d in (gallery.trefoil(), gallery.figure_eight(), gallery.borromean(), gallery.nodal_trefoil()):
        # connected planar 4-valent graph: F = V + 2
        assert len(faces(d)) == len(d.sites) + 2


def test_r1_round_trip():
    d = gallery.trefoil()
    tail = list(d.edges[0].tail)
    for sign in (1, -1):
        for side in (1, 3):
            grown = apply_move(d, MoveSpec("R1+", (tail,), {"sign": sign, "side": side}))
            assert validate(grown) == []
            new = max(grown.crossing_ids())
            assert crossing_sign(grown, new) == sign
            assert find_kinks(grown) == [new]
            assert f_polynomial(grown) == f_polynomial(d)
            assert apply_move(grown, MoveSpec("R1-", (new,))) == d


def test_r2_round_trip():
    d = gallery.figure_eight()
    for face in faces(d):
        tails = []
        for dart in face:
            e = d.edge_from.get(dart) or d.edge_into[dart]
            if list(e.tail) not in tails:
                tails.append(list(e.tail))
        if len(tails) < 2:
            continue
        for over in (0, 1):
            grown = apply_move(d, MoveSpec("R2+", tails[:2], {"over": over}))
            assert validate(grown) == []
            assert f_polynomial(grown) == f_polynomial(d)
            pair = tuple(sorted(set(grown.crossing_ids()) - set(d.crossing_ids())))
            assert pair in find_bigons(grown)
            assert apply_move(grown, MoveSpec("R2-", pair)) == d


def test_r3_on_braid_relation():
    d = braid_closure(3, "1 2 1 -2 -2")
    triangles = [t for t in find_triangles(d) if r3_applicable(d, t)]
    assert triangles
    e = apply_move(d, MoveSpec("R3", triangles[0]))
    assert validate(e) == []
    assert f_polynomial(e) == f_polynomial(d)


def test_iv_moves_node_through_crossings():
    d = braid_closure(3, "1 2 n1 2")
    triangles = [t for t in find_triangles(d) if iv_applicable(d, t)]
    assert triangles
    e = apply_move(d, MoveSpec("IV", triangles[0]))
    assert validate(e) == []
    assert parity_assignment(e) == parity_assignment(d)
    assert resolution_polys(e) == resolution_polys(d)


def test_v_flype_preserves_resolutions():
    d = braid_closure(2, "n1 1 n1 -1 1")
    flypes = find_flypes(d)
    assert flypes
    e = apply_move(d, MoveSpec("V", flypes[0]))
    assert validate(e) == []
    assert resolution_polys(e) == resolution_polys(d)


def test_detour_inserts_and_removes_virtuals():
    d = gallery.trefoil()
    tails = [list(e.tail) for e in d.edges]
    e = apply_move(d, MoveSpec("Detour", (tails[0],), {"count": 0, "targets": [tails[3]]}))
    assert len(e.virtual_ids()) == 1
    assert validate(e) == []
    assert f_polynomial(e) == f_polynomial(d)
    assert remove_virtuals(e).virtual_ids() == []
    assert f_polynomial(remove_virtuals(e)) == f_polynomial(d)


def test_pattern_mismatch():
    d = gallery.trefoil()
    with pytest.raises(PatternMismatch):
        apply_move(d, MoveSpec("R1-", (1,)))
    with pytest.raises(PatternMismatch):
        apply_move(d, MoveSpec("R2-", (1, 2)))
    with pytest.raises(PatternMismatch):
        apply_move(d, MoveSpec("R1+", ([99, 0],)))
    with pytest.raises(PatternMismatch):
        apply_move(d, MoveSpec("R1+", ([1, 2],), {"sign": 2}))
    with pytest.raises(PatternMismatch):
        apply_move(d, MoveSpec("IV", (1, 2, 3)))


def test_move_spec_json():
    spec = MoveSpec("R2+", ([1, 2], [3, 0]), {"side": 1, "over": 1})
    assert MoveSpec.from_json(spec.to_json()) == spec
    with pytest.raises(InputError):
        MoveSpec("R9")
    with pytest.raises(InputError):
        MoveSpec.from_json({"move": "R1-", "location": [1], "where": 3})


def test_scramble_is_seeded_and_uses_every_move():
    rng = random.Random(51)
    used = Counter()
    for case in range(60):
        d = random_braid(rng, 3, 7, node_rate=0.4, virtual_rate=0.1)
        a, specs = scramble(d, seed=case, n_moves=20)
        b, again = scramble(d, seed=case, n_moves=20)
        assert a == b and specs == again
        assert validate(a) == []
        used.update(s.move for s in specs)
    assert set(used) == set(MOVE_NAMES)


def test_scramble_keeps_resolution_multiset():
    for d in (gallery.nodal_trefoil(), gallery.code_123132_graph()):
        before = resolution_polys(d)
        for seed in range(5):
            e, _ = scramble(d, seed=seed, n_moves=15)
            assert resolution_polys(e) == before


def test_simplify_reduces_grown_unknot():
    grown, _ = scramble(braid_closure(2, "1 -1"), seed=3, n_moves=6, moves=("R1+", "R2+", "Detour"))
    small = simplify(grown)
    assert small.crossing_ids() == [] and small.sites == ()
    assert small.virtual_ids() == []
    assert f_polynomial(small) == f_polynomial(grown)
    with pytest.raises(NodePresent):
        simplify(gallery.nodal_trefoil())


def test_simplify_leaves_reduced_trefoil_alone():
    assert simplify(gallery.trefoil()) == gallery.trefoil()

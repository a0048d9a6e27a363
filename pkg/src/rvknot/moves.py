"""Rigid-vertex and virtual Reidemeister moves on diagrams.

Edges are addressed by their tail port ``[site, port]`` and local patterns by
site ids.  Moves that need a face of the diagram (the third move, the node
move IV and the flype V) look for it in the rotation system given by the
counterclockwise port order at every site, so they are only offered where the
pattern really bounds a face.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .core import (
    Diagram, NodeType, PortRef, Site, classify_node_orientation, crossing_sign, over_for_sign,
)
from .errors import InputError, NodePresent, PatternMismatch
from .rewrite import Work

MOVE_NAMES = ("R1+", "R1-", "R2+", "R2-", "R3", "IV", "V", "Detour")
STRAIGHT = {0: 2, 1: 3, 2: 0, 3: 1}


@dataclass(frozen=True)
class MoveSpec:
    """One move and where to apply it.

    Attributes:
        move: one of ``MOVE_NAMES``.
        location: site ids, or ``[site, port]`` edge tails, depending on the move.
        variant: move-specific options such as ``sign`` or ``side``.
    """

    move: str
    location: tuple = ()
    variant: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.move not in MOVE_NAMES:
            raise InputError(f"unknown move {self.move!r}")
        object.__setattr__(self, "location", tuple(_freeze(x) for x in self.location))

    def to_json(self) -> dict:
        return {"move": self.move, "location": [_thaw(x) for x in self.location],
                "variant": {k: _thaw(v) for k, v in self.variant.items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> MoveSpec:
        extra = set(obj) - {"move", "location", "variant"}
        if extra:
            raise InputError(f"unknown move fields {sorted(extra)}")
        return cls(obj["move"], tuple(obj.get("location", ())), dict(obj.get("variant", {})))


def _freeze(x):
    return tuple(_freeze(y) for y in x) if isinstance(x, (list, tuple)) else x


def _thaw(x):
    return [_thaw(y) for y in x] if isinstance(x, (list, tuple)) else x


def _port(x) -> PortRef:
    try:
        s, p = x
        return PortRef(int(s), int(p))
    except (TypeError, ValueError):
        raise PatternMismatch(f"{x!r} is not an edge tail [site, port]") from None


def _is_over(site: Site, port: int) -> bool:
    return port % 2 == int(site.over[0]) % 2


# ---------------------------------------------------------------- faces

def faces(diagram: Diagram) -> list[list[PortRef]]:
    """Faces of the rotation system as cyclic lists of darts ``(site, port)``.

    A dart leaves its site along the edge at that port; the next dart of the
    face is the port counterclockwise after the arrival port.
    """
    partner = {}
    for e in diagram.edges:
        partner[e.tail] = e.head
        partner[e.head] = e.tail
    seen = set()
    out = []
    for start in sorted(partner):
        if start in seen:
            continue
        face = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            arr = partner[cur]
            cur = PortRef(arr.site, (arr.port + 1) % 4)
        out.append(face)
    return out


def _edge_partner(diagram: Diagram) -> dict[PortRef, PortRef]:
    partner = {}
    for e in diagram.edges:
        partner[e.tail] = e.head
        partner[e.head] = e.tail
    return partner


def find_triangles(diagram: Diagram) -> list[tuple[int, int, int]]:
    """Triangular faces with three distinct non-virtual corners."""
    sites = diagram.site_map
    found = set()
    for face in faces(diagram):
        if len(face) != 3:
            continue
        ids = [d.site for d in face]
        if len(set(ids)) != 3 or any(sites[i].is_virtual for i in ids):
            continue
        found.add(tuple(sorted(ids)))
    return sorted(found)


def _triangle_face(diagram: Diagram, ids: Sequence[int]):
    want = sorted(ids)
    for face in faces(diagram):
        if len(face) == 3 and sorted(d.site for d in face) == want:
            return face
    raise PatternMismatch(f"sites {list(ids)} do not bound a triangular face")


def _triangle_edges(diagram: Diagram, face):
    """The three sides as (tail, head) port pairs."""
    partner = _edge_partner(diagram)
    sides = []
    for dart in face:
        other = partner[dart]
        if dart in diagram.edge_from:
            sides.append((dart, other))
        else:
            sides.append((other, dart))
    return sides


def _side_status(diagram: Diagram, tail: PortRef, head: PortRef) -> str | None:
    """``"over"``/``"under"`` when the side is over (under) at both crossing ends."""
    states = set()
    for pr in (tail, head):
        s = diagram.site(pr.site)
        if not s.is_crossing:
            return None
        states.add(_is_over(s, pr.port))
    if len(states) == 1:
        return "over" if states.pop() else "under"
    return None


def r3_applicable(diagram: Diagram, ids: Sequence[int]) -> bool:
    try:
        face = _triangle_face(diagram, ids)
    except PatternMismatch:
        return False
    if not all(diagram.site(i).is_crossing for i in ids):
        return False
    return any(_side_status(diagram, t, h) for t, h in _triangle_edges(diagram, face))


def iv_applicable(diagram: Diagram, ids: Sequence[int]) -> bool:
    try:
        face = _triangle_face(diagram, ids)
    except PatternMismatch:
        return False
    kinds = [diagram.site(i) for i in ids]
    nodes = [s for s in kinds if s.is_node]
    if len(nodes) != 1 or sum(s.is_crossing for s in kinds) != 2:
        return False
    node = nodes[0]
    if node.is_special or classify_node_orientation(diagram, node.id) is not NodeType.TYPE_A:
        return False
    for t, h in _triangle_edges(diagram, face):
        if node.id not in (t.site, h.site):
            return _side_status(diagram, t, h) is not None
    return False


def _swap_triangle(work: Work, sides):
    """Push each side's strand across the opposite corner.

    Along every side the two consecutive passes trade places while each site
    keeps its ports.
    """
    for tail, head in sides:
        x, y = tail.site, head.site
        xi = PortRef(x, STRAIGHT[tail.port])
        yo = PortRef(y, STRAIGHT[head.port])
        before = work.inn[xi]
        if before == yo:
            # a two-pass cycle x -> y -> x looks the same in either order
            continue
        after = work.out[yo]
        work.cut(before)
        work.cut(tail)
        work.cut(yo)
        work.connect(before, head)
        work.connect(yo, xi)
        work.connect(tail, after)


# ---------------------------------------------------------------- bigons

def _bigon_face(diagram: Diagram, e, f) -> bool:
    """Whether two edges joining sites ``s`` and ``t`` bound a face.

    ``e`` and ``f`` are (port at s, port at t) pairs.
    """
    for a, b in ((e, f), (f, e)):
        if b[1] == (a[1] + 1) % 4 and a[0] == (b[0] + 1) % 4:
            return True
    return False


def _flype_pattern(diagram: Diagram, node_id: int, cross_id: int):
    """Return ``("forward", ...)`` when both out-edges of the node run straight
    into the crossing, ``("reverse", ...)`` when both out-edges of the crossing
    run into the node."""
    node = diagram.site_map.get(node_id)
    cross = diagram.site_map.get(cross_id)
    if node is None or cross is None or not node.is_node or not cross.is_crossing:
        raise PatternMismatch("V needs a node and a crossing")
    if node.is_special or classify_node_orientation(diagram, node_id) is not NodeType.TYPE_A:
        raise PatternMismatch("V needs a type A standard node")
    for first, second, tag in ((node_id, cross_id, "forward"), (cross_id, node_id, "reverse")):
        links = []
        for p in diagram.out_ports(first):
            head = diagram.edge_from[PortRef(first, p)].head
            if head.site == second:
                links.append((p, head.port))
        if len(links) == 2 and _bigon_face(diagram, *links):
            ext = []
            for p, q in links:
                ext.append(diagram.edge_into[PortRef(first, STRAIGHT[p])].tail)
                ext.append(diagram.edge_from[PortRef(second, STRAIGHT[q])].head)
            if any(x.site in (node_id, cross_id) for x in ext):
                continue
            return tag, links
    raise PatternMismatch(f"node {node_id} and crossing {cross_id} do not form a flype bigon")


def find_flypes(diagram: Diagram) -> list[tuple[int, int]]:
    out = []
    for n in diagram.node_ids():
        for c in diagram.crossing_ids():
            try:
                _flype_pattern(diagram, n, c)
            except PatternMismatch:
                continue
            out.append((n, c))
    return out


def _flype(work: Work, diagram: Diagram, first: int, second: int, links):
    """Slide ``second`` back through ``first`` along both strands.

    The strand that left ``first`` at port ``a+2`` now enters ``second``
    at the port the other strand used, and vice versa.
    """
    (pa, qa), (pb, qb) = links
    a_in, b_in = STRAIGHT[pa], STRAIGHT[pb]
    xa = diagram.edge_into[PortRef(first, a_in)].tail
    xb = diagram.edge_into[PortRef(first, b_in)].tail
    ya = diagram.edge_from[PortRef(second, STRAIGHT[qa])].head
    yb = diagram.edge_from[PortRef(second, STRAIGHT[qb])].head
    for t in (xa, xb, PortRef(first, pa), PortRef(first, pb),
              PortRef(second, STRAIGHT[qa]), PortRef(second, STRAIGHT[qb])):
        work.cut(t)
    work.connect(xa, PortRef(second, qb))
    work.connect(PortRef(second, STRAIGHT[qb]), PortRef(first, b_in))
    work.connect(PortRef(first, pb), ya)
    work.connect(xb, PortRef(second, qa))
    work.connect(PortRef(second, STRAIGHT[qa]), PortRef(first, a_in))
    work.connect(PortRef(first, pa), yb)


# ---------------------------------------------------------------- R1 / R2

def find_kinks(diagram: Diagram) -> list[int]:
    """Crossings with an edge from one strand straight back into the other."""
    out = []
    for c in diagram.crossing_ids():
        for p in diagram.out_ports(c):
            head = diagram.edge_from[PortRef(c, p)].head
            if head.site == c and head.port % 2 != p % 2:
                out.append(c)
                break
    return out


def _strand_links(diagram: Diagram, c1: int, c2: int):
    """Map each strand (port parity) of ``c1`` to the strand of ``c2`` it
    reaches along a single edge, if any."""
    links = {}
    for p in range(4):
        pr = PortRef(c1, p)
        e = diagram.edge_from.get(pr) or diagram.edge_into.get(pr)
        other = e.head if e.tail == pr else e.tail
        if other.site == c2 and p % 2 not in links:
            links[p % 2] = other.port % 2
    return links


def r2_removable(diagram: Diagram, c1: int, c2: int) -> bool:
    if c1 == c2:
        return False
    s1, s2 = diagram.site_map.get(c1), diagram.site_map.get(c2)
    if s1 is None or s2 is None or not s1.is_crossing or not s2.is_crossing:
        return False
    links = _strand_links(diagram, c1, c2)
    if len(links) != 2 or set(links.values()) != {0, 1}:
        return False
    if crossing_sign(diagram, c1) == crossing_sign(diagram, c2):
        return False
    over1 = int(s1.over[0]) % 2
    over2 = int(s2.over[0]) % 2
    return links[over1] == over2


def find_bigons(diagram: Diagram) -> list[tuple[int, int]]:
    cs = diagram.crossing_ids()
    return [(a, b) for i, a in enumerate(cs) for b in cs[i + 1:] if r2_removable(diagram, a, b)]


# ---------------------------------------------------------------- detour

def _virtual_run(diagram: Diagram, tail: PortRef, count: int) -> list[int]:
    run = []
    cur = tail
    for _ in range(count):
        head = diagram.edge_from[cur].head
        if not diagram.site(head.site).is_virtual or head.site in run:
            raise PatternMismatch("the strand does not pass that many virtual crossings")
        run.append(head.site)
        cur = PortRef(head.site, STRAIGHT[head.port])
    return run


def _detour(work: Work, diagram: Diagram, tail: PortRef, count: int, targets):
    for v in _virtual_run(diagram, tail, count):
        work.splice(v, STRAIGHT)
    cur = tail
    for t in targets:
        t = _port(t)
        if t not in work.out:
            raise PatternMismatch(f"no edge leaves {list(t)}")
        v = work.new_id()
        work.sites[v] = Site.virtual(v)
        if t == cur:
            work.insert_chain(cur, [(v, 0, 2), (v, 1, 3)])
            cur = PortRef(v, 3)
        else:
            work.insert_chain(cur, [(v, 0, 2)])
            work.insert_chain(t, [(v, 1, 3)])
            cur = PortRef(v, 2)


# ---------------------------------------------------------------- apply

def apply_move(diagram: Diagram, spec: MoveSpec) -> Diagram:
    """Apply one move; raises ``PatternMismatch`` if it does not fit."""
    work = Work(diagram)
    loc = spec.location
    var = dict(spec.variant)
    m = spec.move
    if m == "R1+":
        tail = _port(loc[0] if len(loc) == 1 else loc)
        if tail not in diagram.edge_from:
            raise PatternMismatch(f"no edge leaves {list(tail)}")
        sign = int(var.get("sign", 1))
        side = int(var.get("side", 1))
        if sign not in (1, -1) or side not in (1, 3):
            raise PatternMismatch("R1+ needs sign +-1 and side 1 or 3")
        c = work.new_id()
        work.sites[c] = Site.crossing(c, over_for_sign([0, side], sign))
        work.insert_chain(tail, [(c, 0, 2), (c, side, (side + 2) % 4)])
    elif m == "R1-":
        c = int(loc[0])
        if c not in find_kinks(diagram):
            raise PatternMismatch(f"crossing {c} carries no removable kink")
        work.splice(c, STRAIGHT)
    elif m == "R2+":
        if len(loc) != 2:
            raise PatternMismatch("R2+ needs two edge tails")
        e1, e2 = _port(loc[0]), _port(loc[1])
        if e1 == e2 or e1 not in diagram.edge_from or e2 not in diagram.edge_from:
            raise PatternMismatch("R2+ needs two distinct edges")
        side = int(var.get("side", 3))
        over = int(var.get("over", 0))
        reverse = bool(var.get("reverse", False))
        if side not in (1, 3) or over not in (0, 1):
            raise PatternMismatch("R2+ needs side 1 or 3 and over 0 or 1")
        c1, c2 = work.new_id(), work.new_id()
        diag = "02" if over == 0 else "13"
        work.sites[c1] = Site.crossing(c1, diag)
        work.sites[c2] = Site.crossing(c2, diag)
        other = 4 - side
        work.insert_chain(e1, [(c1, 0, 2), (c2, 0, 2)])
        second = [(c1, side, (side + 2) % 4), (c2, other, (other + 2) % 4)]
        work.insert_chain(e2, second[::-1] if reverse else second)
    elif m == "R2-":
        c1, c2 = int(loc[0]), int(loc[1])
        if not r2_removable(diagram, c1, c2):
            raise PatternMismatch(f"crossings {c1}, {c2} are not a removable bigon")
        work.splice(c1, STRAIGHT)
        work.splice(c2, STRAIGHT)
    elif m in ("R3", "IV"):
        ids = [int(x) for x in loc]
        ok = r3_applicable(diagram, ids) if m == "R3" else iv_applicable(diagram, ids)
        if not ok:
            raise PatternMismatch(f"{m} does not apply at {ids}")
        _swap_triangle(work, _triangle_edges(diagram, _triangle_face(diagram, ids)))
    elif m == "V":
        n, c = int(loc[0]), int(loc[1])
        tag, links = _flype_pattern(diagram, n, c)
        first, second = (n, c) if tag == "forward" else (c, n)
        _flype(work, diagram, first, second, links)
    else:
        tail = _port(loc[0] if len(loc) == 1 else loc)
        if tail not in diagram.edge_from:
            raise PatternMismatch(f"no edge leaves {list(tail)}")
        _detour(work, diagram, tail, int(var.get("count", 0)), var.get("targets", ()))
    return work.diagram()


# ---------------------------------------------------------------- random walks

def _candidates(diagram: Diagram, move: str, rng: random.Random) -> list[MoveSpec]:
    edges = [list(e.tail) for e in diagram.edges]
    if move == "R1+":
        if not edges:
            return []
        return [MoveSpec("R1+", (rng.choice(edges),),
                         {"sign": rng.choice((1, -1)), "side": rng.choice((1, 3))})]
    if move == "R1-":
        return [MoveSpec("R1-", (c,)) for c in find_kinks(diagram)]
    if move == "R2+":
        pairs = []
        for face in faces(diagram):
            tails = []
            for d in face:
                e = diagram.edge_from.get(d) or diagram.edge_into[d]
                tails.append(list(e.tail))
            uniq = [t for i, t in enumerate(tails) if t not in tails[:i]]
            pairs += [(a, b) for i, a in enumerate(uniq) for b in uniq[i + 1:]]
        if not pairs:
            return []
        a, b = rng.choice(pairs)
        return [MoveSpec("R2+", (a, b), {"side": rng.choice((1, 3)), "over": rng.choice((0, 1)),
                                         "reverse": rng.choice((False, True))})]
    if move == "R2-":
        return [MoveSpec("R2-", p) for p in find_bigons(diagram)]
    if move == "R3":
        return [MoveSpec("R3", t) for t in find_triangles(diagram) if r3_applicable(diagram, t)]
    if move == "IV":
        return [MoveSpec("IV", t) for t in find_triangles(diagram) if iv_applicable(diagram, t)]
    if move == "V":
        return [MoveSpec("V", p) for p in find_flypes(diagram)]
    if not edges:
        return []
    virtuals = diagram.virtual_ids()
    if virtuals and rng.random() < 0.5:
        v = rng.choice(virtuals)
        tail = list(diagram.edge_into[PortRef(v, rng.choice((0, 1)))].tail)
        return [MoveSpec("Detour", (tail,), {"count": 1, "targets": []})]
    return [MoveSpec("Detour", (rng.choice(edges),), {"count": 0, "targets": [rng.choice(edges)]})]


def scramble(diagram: Diagram, seed: int, n_moves: int,
             moves: Sequence[str] = MOVE_NAMES) -> tuple[Diagram, list[MoveSpec]]:
    """Apply ``n_moves`` randomly drawn applicable moves.

    Draws whose move has no match are skipped; the walk gives up after
    ``50 * n_moves`` draws.
    """
    rng = random.Random(seed)
    done: list[MoveSpec] = []
    attempts = 0
    while len(done) < n_moves and attempts < 50 * max(n_moves, 1):
        attempts += 1
        move = rng.choice(list(moves))
        cands = _candidates(diagram, move, rng)
        if not cands:
            continue
        spec = rng.choice(cands)
        try:
            diagram = apply_move(diagram, spec)
        except PatternMismatch:
            continue
        done.append(spec)
    return diagram, done


def remove_virtuals(diagram: Diagram) -> Diagram:
    """Excise every virtual crossing.  The classical data is unchanged, so the
    result is virtually equivalent to the input."""
    work = Work(diagram)
    for v in diagram.virtual_ids():
        work.splice(v, STRAIGHT)
    return work.diagram()


def simplify(diagram: Diagram) -> Diagram:
    """Greedy reduction by R1-, R2- and virtual excision; never adds crossings."""
    if diagram.node_ids():
        raise NodePresent("simplify works on links only")
    diagram = remove_virtuals(diagram)
    while True:
        kinks = find_kinks(diagram)
        if kinks:
            diagram = apply_move(diagram, MoveSpec("R1-", (kinks[0],)))
            continue
        bigons = find_bigons(diagram)
        if bigons:
            diagram = apply_move(diagram, MoveSpec("R2-", bigons[0]))
            continue
        return diagram

"""Replacing nodes by tangles: single replacements, the parity link L(G) and
the resolution collection C(G)."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import (
    Diagram, Edge, NodeType, PortRef, Site, classify_node_orientation, indicator_partner,
    over_for_sign,
)
from .errors import (
    InapplicableTangle, InputError, NotANode, TooManyNodes, UncoveredNode, VirtualSite,
)
from .parity import Parity, ParityMap


class TangleKind(enum.Enum):
    POS_CROSSING = "pos"
    NEG_CROSSING = "neg"
    ORIENTED_SMOOTHING = "smooth"
    INDICATOR_SMOOTHING = "indicator"
    FULL_POS_TWIST = "twist+"
    FULL_NEG_TWIST = "twist-"


_TANGLE_ALIASES = {
    "pos": TangleKind.POS_CROSSING, "+": TangleKind.POS_CROSSING,
    "neg": TangleKind.NEG_CROSSING, "-": TangleKind.NEG_CROSSING,
    "smooth": TangleKind.ORIENTED_SMOOTHING, "0": TangleKind.ORIENTED_SMOOTHING,
    "indicator": TangleKind.INDICATOR_SMOOTHING, "unfold": TangleKind.INDICATOR_SMOOTHING,
    "twist+": TangleKind.FULL_POS_TWIST, "postwist": TangleKind.FULL_POS_TWIST,
    "twist-": TangleKind.FULL_NEG_TWIST, "negtwist": TangleKind.FULL_NEG_TWIST,
}


def tangle_from_name(name: str) -> TangleKind:
    try:
        return _TANGLE_ALIASES[name.strip().lower()]
    except KeyError:
        raise InputError(f"unknown tangle {name!r}") from None


@dataclass(frozen=True)
class ParityRule:
    even: TangleKind = TangleKind.POS_CROSSING
    odd: TangleKind = TangleKind.NEG_CROSSING

    def tangle_for(self, parity: Parity) -> TangleKind:
        return self.even if parity is Parity.EVEN else self.odd

    def to_json(self) -> dict:
        return {"even": self.even.value, "odd": self.odd.value}

    @classmethod
    def from_json(cls, obj: Mapping) -> ParityRule:
        return cls(tangle_from_name(obj["even"]), tangle_from_name(obj["odd"]))

    @classmethod
    def parse(cls, text: str) -> ParityRule:
        """``"even=pos,odd=neg"``"""
        parts = {}
        for item in text.split(","):
            key, _, value = item.partition("=")
            key = key.strip().lower()
            if key not in ("even", "odd") or not value:
                raise InputError(f"bad rule item {item!r}")
            parts[key] = tangle_from_name(value)
        return cls(parts.get("even", cls.even), parts.get("odd", cls.odd))

    def __str__(self):
        return f"even={self.even.value},odd={self.odd.value}"


TWIST_RULE = ParityRule(TangleKind.FULL_POS_TWIST, TangleKind.FULL_NEG_TWIST)


class Work:
    """Mutable scratch copy of a diagram used while rewiring."""

    def __init__(self, diagram: Diagram):
        self.sites: dict[int, Site] = dict(diagram.site_map)
        self.out: dict[PortRef, PortRef] = {e.tail: e.head for e in diagram.edges}
        self.inn: dict[PortRef, PortRef] = {e.head: e.tail for e in diagram.edges}
        self.free = diagram.free_loops
        self._next = diagram.next_site_id()

    def new_id(self) -> int:
        self._next += 1
        return self._next - 1

    def connect(self, tail: PortRef, head: PortRef):
        self.out[tail] = head
        self.inn[head] = tail

    def cut(self, tail: PortRef) -> PortRef:
        head = self.out.pop(tail)
        del self.inn[head]
        return head

    def in_ports(self, sid: int) -> list[int]:
        return sorted(p for p in range(4) if PortRef(sid, p) in self.inn)

    def insert_chain(self, tail: PortRef, passes: Sequence[tuple[int, int, int]]):
        """Route the edge leaving ``tail`` through ``(site, in, out)`` passes."""
        head = self.cut(tail)
        cur = tail
        for sid, pin, pout in passes:
            self.connect(cur, PortRef(sid, pin))
            cur = PortRef(sid, pout)
        self.connect(cur, head)

    def splice(self, sid: int, route: Mapping[int, int]):
        """Delete site ``sid`` joining the strands as ``route`` (in -> out) says."""
        done = set()
        for p in range(4):
            start = PortRef(sid, p)
            if start not in self.inn or start in done:
                continue
            tail = self.inn[start]
            if tail.site == sid:
                continue
            cur = start
            while True:
                done.add(cur)
                nxt = self.out[PortRef(sid, route[cur.port])]
                if nxt.site != sid:
                    break
                cur = nxt
            self.cut(tail)
            last_out = PortRef(sid, route[cur.port])
            self.cut(last_out)
            self.connect(tail, nxt)
        # anything left forms closed loops through this site only
        for p in range(4):
            start = PortRef(sid, p)
            if start not in self.inn or start in done:
                continue
            self.free += 1
            cur = start
            while cur not in done:
                done.add(cur)
                cur = self.out[PortRef(sid, route[cur.port])]
        for p in range(4):
            port = PortRef(sid, p)
            if port in self.out:
                self.cut(port)
        del self.sites[sid]

    def diagram(self) -> Diagram:
        return Diagram(tuple(self.sites.values()),
                       tuple(Edge(t, h) for t, h in self.out.items()), self.free)


def _retarget(work: Work, sid: int, mapping: Mapping[int, PortRef]):
    """Re-point every edge end at site ``sid`` to ``mapping[port]``."""
    edges = []
    for p in range(4):
        port = PortRef(sid, p)
        if port in work.out:
            edges.append((port, work.out[port]))
        if port in work.inn and work.inn[port].site != sid:
            edges.append((work.inn[port], port))
    for tail, _ in edges:
        work.cut(tail)
    for tail, head in edges:
        if tail.site == sid:
            tail = mapping[tail.port]
        if head.site == sid:
            head = mapping[head.port]
        work.connect(tail, head)


def _node_checks(diagram: Diagram, node_id: int) -> Site:
    site = diagram.site_map.get(node_id)
    if site is None:
        raise NotANode(f"no site {node_id}")
    if site.is_virtual:
        raise VirtualSite(f"site {node_id} is virtual")
    if not site.is_node:
        raise NotANode(f"site {node_id} is not a node")
    return site


def smoothing_route(diagram: Diagram, node_id: int, tangle: TangleKind) -> dict[int, int]:
    """in-port -> out-port pairing of the orientation-preserving smoothing used
    by ``tangle`` at the node."""
    site = diagram.site(node_id)
    kind = classify_node_orientation(diagram, node_id)
    ins = diagram.in_ports(node_id)
    if site.is_special:
        if tangle is TangleKind.ORIENTED_SMOOTHING:
            raise InapplicableTangle(
                f"node {node_id} is special; use the indicator smoothing")
        return {p: indicator_partner(site.indicator, p) for p in ins}
    if tangle is TangleKind.INDICATOR_SMOOTHING:
        raise InapplicableTangle(f"node {node_id} has no indicator")
    if kind is not NodeType.TYPE_A:
        raise InapplicableTangle(f"node {node_id} is not of type A")
    a, b = ins
    u = a if (b - a) % 4 == 1 else b  # in-ports are u, u+1
    return {u: (u + 3) % 4, (u + 1) % 4: (u + 2) % 4}


def _replace(work: Work, diagram: Diagram, node_id: int, tangle: TangleKind):
    site = _node_checks(diagram, node_id)
    ins = diagram.in_ports(node_id)
    if tangle in (TangleKind.POS_CROSSING, TangleKind.NEG_CROSSING):
        if site.is_special or classify_node_orientation(diagram, node_id) is not NodeType.TYPE_A:
            raise InapplicableTangle(f"node {node_id}: a crossing needs a type A node")
        sign = 1 if tangle is TangleKind.POS_CROSSING else -1
        work.sites[node_id] = Site.crossing(node_id, over_for_sign(ins, sign))
        return
    route = smoothing_route(diagram, node_id, tangle)
    if tangle in (TangleKind.ORIENTED_SMOOTHING, TangleKind.INDICATOR_SMOOTHING):
        work.splice(node_id, route)
        return
    _full_twist(work, node_id, route, ins, 1 if tangle is TangleKind.FULL_POS_TWIST else -1)


def _full_twist(work: Work, node_id: int, route: Mapping[int, int], ins, sign: int):
    """Two same-sign crossings in series whose end connectivity is ``route``.

    The tangle is a two-strand twist with endpoints t0..t3 counterclockwise;
    t0-t3 and t1-t2 are joined.  Crossing ``a`` carries t0, t1 and crossing
    ``b`` carries t2, t3, with ``a`` ports 2, 3 wired to ``b`` ports 1, 0.
    """
    pairs = [tuple(sorted((p, route[p]))) for p in route]
    lowers = []
    for x, y in pairs:
        lowers.append(x if (y - x) % 4 == 1 else y)
    q = min(lowers)
    old_of = [(q + 1 + j) % 4 for j in range(4)]  # tangle endpoint j -> old port
    a, b = node_id, work.new_id()
    attach = {old_of[0]: PortRef(a, 0), old_of[1]: PortRef(a, 1),
              old_of[2]: PortRef(b, 2), old_of[3]: PortRef(b, 3)}
    work.sites[a] = Site.crossing(a, "02")
    work.sites[b] = Site.crossing(b, "02")
    _retarget(work, node_id, attach)
    inset = set(ins)
    if old_of[0] in inset:
        work.connect(PortRef(a, 2), PortRef(b, 1))
    else:
        work.connect(PortRef(b, 1), PortRef(a, 2))
    if old_of[1] in inset:
        work.connect(PortRef(a, 3), PortRef(b, 0))
    else:
        work.connect(PortRef(b, 0), PortRef(a, 3))
    for sid in (a, b):
        work.sites[sid] = Site.crossing(sid, over_for_sign(work.in_ports(sid), sign))


def replace_node(diagram: Diagram, node_id: int, tangle: TangleKind) -> Diagram:
    work = Work(diagram)
    _replace(work, diagram, node_id, tangle)
    return work.diagram()


def replace_nodes(diagram: Diagram, assignment: Mapping[int, TangleKind]) -> Diagram:
    """Apply several node replacements at once."""
    work = Work(diagram)
    for node_id in sorted(assignment):
        _replace(work, diagram, node_id, assignment[node_id])
    return work.diagram()


def parity_resolve(diagram: Diagram, parity: ParityMap, rule: ParityRule = ParityRule()) -> Diagram:
    """Replace every node by the tangle ``rule`` assigns to its parity."""
    assignment = {}
    for n in diagram.node_ids():
        if n not in parity.assignments:
            raise UncoveredNode(n)
        assignment[n] = rule.tangle_for(parity[n])
    return replace_nodes(diagram, assignment)


DEFAULT_MAX_NODES = 8
DEFAULT_CHOICES = (TangleKind.POS_CROSSING, TangleKind.NEG_CROSSING, TangleKind.ORIENTED_SMOOTHING)


def resolution_set(diagram: Diagram, choices: Sequence[TangleKind] = DEFAULT_CHOICES,
                   max_nodes: int = DEFAULT_MAX_NODES) -> list[tuple[dict[int, TangleKind], Diagram]]:
    """Every way of replacing each node by one of ``choices``, in lexicographic
    order of the choice indices over nodes sorted by id."""
    nodes = diagram.node_ids()
    if len(nodes) > max_nodes:
        raise TooManyNodes(f"{len(nodes)} nodes exceed the cap of {max_nodes}")
    out = []
    for combo in itertools.product(choices, repeat=len(nodes)):
        assignment = dict(zip(nodes, combo))
        out.append((assignment, replace_nodes(diagram, assignment)))
    return out

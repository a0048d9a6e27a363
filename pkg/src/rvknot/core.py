"""Diagram data model for oriented rigid-vertex 4-valent graph diagrams.

A diagram is a set of 4-valent sites (crossings, rigid nodes, virtual
crossings) whose ports are numbered 0..3 counterclockwise, plus oriented
edges pairing ports.  Opposite ports are ``p`` and ``p + 2 (mod 4)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import NotANode, NotInPort, PolicyMismatch

CROSSING = "crossing"
NODE = "node"
VIRTUAL = "virtual"

STANDARD = "standard"
SPECIAL = "special"

OVER_STRANDS = ("02", "13")
INDICATORS = ("01-23", "12-30")

# indicator -> port pairing (symmetric)
_INDICATOR_PAIRS = {
    "01-23": {0: 1, 1: 0, 2: 3, 3: 2},
    "12-30": {1: 2, 2: 1, 3: 0, 0: 3},
}


class TransitPolicy(enum.Enum):
    OPPOSITE_EDGE = "opposite"
    INDICATOR_SPLIT = "indicator"


class NodeType(enum.Enum):
    TYPE_A = "A"  # in-ports adjacent: strands pass straight through
    TYPE_B = "B"  # in-ports opposite: alternating in/out around the node


class PortRef(NamedTuple):
    site: int
    port: int

    def __str__(self):
        return f"{self.site}.{self.port}"


class Edge(NamedTuple):
    tail: PortRef
    head: PortRef


@dataclass(frozen=True)
class Site:
    id: int
    kind: str
    over: str | None = None
    flavor: str | None = None
    indicator: str | None = None

    @classmethod
    def crossing(cls, id: int, over: str) -> Site:
        return cls(id, CROSSING, over=over)

    @classmethod
    def node(cls, id: int) -> Site:
        return cls(id, NODE, flavor=STANDARD)

    @classmethod
    def special(cls, id: int, indicator: str) -> Site:
        return cls(id, NODE, flavor=SPECIAL, indicator=indicator)

    @classmethod
    def virtual(cls, id: int) -> Site:
        return cls(id, VIRTUAL)

    @property
    def is_crossing(self) -> bool:
        return self.kind == CROSSING

    @property
    def is_node(self) -> bool:
        return self.kind == NODE

    @property
    def is_virtual(self) -> bool:
        return self.kind == VIRTUAL

    @property
    def is_special(self) -> bool:
        return self.kind == NODE and self.flavor == SPECIAL


def _as_port(p) -> PortRef:
    return p if isinstance(p, PortRef) else PortRef(int(p[0]), int(p[1]))


@dataclass(frozen=True)
class Diagram:
    """Immutable diagram.  Sites are kept sorted by id and edges by tail port,
    so two diagrams describing the same wiring compare equal.

    ``free_loops`` counts closed components that meet no site.
    """

    sites: tuple[Site, ...]
    edges: tuple[Edge, ...]
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(sorted(self.sites, key=lambda s: s.id)))
        edges = tuple(Edge(_as_port(e[0]), _as_port(e[1])) for e in self.edges)
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @classmethod
    def build(cls, sites: Iterable[Site], edges: Iterable, free_loops: int = 0) -> Diagram:
        return cls(tuple(sites), tuple(edges), free_loops)

    def with_changes(self, **kw) -> Diagram:
        return replace(self, **kw)

    # lookups

    @cached_property
    def site_map(self) -> dict[int, Site]:
        return {s.id: s for s in self.sites}

    @cached_property
    def edge_from(self) -> dict[PortRef, Edge]:
        """Edge keyed by its tail port (an out-port of a site)."""
        return {e.tail: e for e in self.edges}

    @cached_property
    def edge_into(self) -> dict[PortRef, Edge]:
        """Edge keyed by its head port (an in-port of a site)."""
        return {e.head: e for e in self.edges}

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def _in_ports(self) -> dict[int, tuple[int, ...]]:
        acc: dict[int, list[int]] = {s.id: [] for s in self.sites}
        for e in self.edges:
            acc.setdefault(e.head.site, []).append(e.head.port)
        return {k: tuple(sorted(v)) for k, v in acc.items()}

    def site(self, site_id: int) -> Site:
        return self.site_map[site_id]

    def in_ports(self, site_id: int) -> tuple[int, ...]:
        return self._in_ports.get(site_id, ())

    def out_ports(self, site_id: int) -> tuple[int, ...]:
        ins = self.in_ports(site_id)
        return tuple(p for p in range(4) if p not in ins)

    def node_ids(self) -> list[int]:
        return [s.id for s in self.sites if s.is_node]

    def crossing_ids(self) -> list[int]:
        return [s.id for s in self.sites if s.is_crossing]

    def virtual_ids(self) -> list[int]:
        return [s.id for s in self.sites if s.is_virtual]

    def next_site_id(self) -> int:
        return max((s.id for s in self.sites), default=0) + 1

    def __str__(self):
        return (f"Diagram({len(self.crossing_ids())} crossings, {len(self.node_ids())} nodes, "
                f"{len(self.virtual_ids())} virtuals, {self.free_loops} free loops)")


@dataclass(frozen=True)
class Violation:
    kind: str
    site: int | None = None
    port: int | None = None

    def __str__(self):
        args = [str(a) for a in (self.site, self.port) if a is not None]
        return f"{self.kind}({','.join(args)})"


def validate(diagram: Diagram) -> list[Violation]:
    """Return every violated structural invariant; an empty list means valid."""
    out: list[Violation] = []
    seen_ids: set[int] = set()
    for s in diagram.sites:
        if s.id in seen_ids:
            out.append(Violation("duplicate-site", s.id))
        seen_ids.add(s.id)
        if not isinstance(s.id, int) or s.id < 0:
            out.append(Violation("bad-site-id", s.id))
        if s.kind == CROSSING:
            if s.over not in OVER_STRANDS:
                out.append(Violation("bad-over", s.id))
        elif s.kind == NODE:
            if s.flavor not in (STANDARD, SPECIAL):
                out.append(Violation("bad-flavor", s.id))
            elif s.flavor == SPECIAL and s.indicator not in INDICATORS:
                out.append(Violation("bad-indicator", s.id))
        elif s.kind != VIRTUAL:
            out.append(Violation("bad-kind", s.id))
    if diagram.free_loops < 0:
        out.append(Violation("free-loops"))

    uses: dict[PortRef, int] = {}
    ins: dict[int, list[int]] = {sid: [] for sid in seen_ids}
    for e in diagram.edges:
        if e.tail == e.head:
            out.append(Violation("self-edge", e.tail.site, e.tail.port))
        for end, is_head in ((e.tail, False), (e.head, True)):
            if end.site not in seen_ids:
                out.append(Violation("unknown-site", end.site))
                continue
            if end.port not in range(4):
                out.append(Violation("bad-port", end.site, end.port))
                continue
            uses[end] = uses.get(end, 0) + 1
            if is_head:
                ins[end.site].append(end.port)

    broken = set()
    for s in diagram.sites:
        for p in range(4):
            n = uses.get(PortRef(s.id, p), 0)
            if n > 1:
                out.append(Violation("port-multiplicity", s.id, p))
                broken.add(s.id)
            elif n == 0:
                out.append(Violation("port-missing", s.id, p))
                broken.add(s.id)

    for s in diagram.sites:
        if s.id in broken:
            continue
        in_ports = sorted(set(ins[s.id]))
        if len(in_ports) != 2 or len(ins[s.id]) != 2:
            out.append(Violation("orientation", s.id))
            continue
        adjacent = (in_ports[1] - in_ports[0]) % 2 == 1
        if s.is_special:
            if adjacent:
                out.append(Violation("special-orientation", s.id))
                if s.indicator in INDICATORS:
                    pairs = _INDICATOR_PAIRS[s.indicator]
                    if pairs[in_ports[0]] == in_ports[1]:
                        out.append(Violation("indicator-orientation", s.id))
        elif not adjacent:
            out.append(Violation("type-b-orientation", s.id))
    return out


def is_valid(diagram: Diagram) -> bool:
    return not validate(diagram)


def classify_node_orientation(diagram: Diagram, node_id: int) -> NodeType:
    site = diagram.site_map.get(node_id)
    if site is None or not site.is_node:
        raise NotANode(f"site {node_id} is not a node")
    a, b = diagram.in_ports(node_id)
    return NodeType.TYPE_A if (b - a) % 2 == 1 else NodeType.TYPE_B


def crossing_sign(diagram: Diagram, site_id: int) -> int:
    """+1 iff the over-strand in-port is one step counterclockwise of the
    under-strand in-port."""
    site = diagram.site(site_id)
    if not site.is_crossing:
        raise ValueError(f"site {site_id} is not a crossing")
    over_ports = (0, 2) if site.over == "02" else (1, 3)
    a, b = diagram.in_ports(site_id)
    o, u = (a, b) if a in over_ports else (b, a)
    return 1 if o == (u + 1) % 4 else -1


def over_for_sign(in_ports: Iterable[int], sign: int) -> str:
    """Over-strand diagonal giving a crossing with the given in-ports the
    requested derived sign."""
    a, b = sorted(in_ports)
    # name the adjacent pair (u, u+1) in cyclic order
    u, v = (a, b) if (b - a) % 4 == 1 else (b, a)
    over_in = v if sign > 0 else u
    return "02" if over_in % 2 == 0 else "13"


def indicator_partner(indicator: str, port: int) -> int:
    return _INDICATOR_PAIRS[indicator][port]


def transit(site: Site, in_port: int, policy: TransitPolicy,
            in_ports: Iterable[int] | None = None) -> int:
    """Out-port reached when entering ``site`` at ``in_port`` under ``policy``.

    When ``in_ports`` is given the entry port is checked against it and the
    result must be an out-port.
    """
    if in_ports is not None:
        in_ports = tuple(in_ports)
        if in_port not in in_ports:
            raise NotInPort(f"port {in_port} is not an in-port of site {site.id}")
    if policy is TransitPolicy.INDICATOR_SPLIT and site.is_special:
        if site.indicator not in INDICATORS:
            raise PolicyMismatch(f"special node {site.id} lacks a well-formed indicator")
        out = _INDICATOR_PAIRS[site.indicator][in_port]
    else:
        out = (in_port + 2) % 4
    if in_ports is not None and out in in_ports:
        raise PolicyMismatch(
            f"policy {policy.value} leads from in-port {in_port} to in-port {out} at site {site.id}")
    return out


def site_transit(diagram: Diagram, site_id: int, in_port: int, policy: TransitPolicy) -> int:
    return transit(diagram.site(site_id), in_port, policy, diagram.in_ports(site_id))


@dataclass(frozen=True)
class Pass:
    """One passage of a walk through a site."""
    site: int
    in_port: int
    out_port: int


@dataclass(frozen=True)
class ComponentWalk:
    """Closed walk; ``edges`` lists edge indices in travel order (always
    traversed tail to head)."""
    edges: tuple[int, ...]
    passes: tuple[Pass, ...]
    policy: TransitPolicy = field(compare=False)

    def sites(self) -> set[int]:
        return {p.site for p in self.passes}


def walk_from(diagram: Diagram, start_edge: int, policy: TransitPolicy) -> ComponentWalk:
    edges = diagram.edges
    emap = diagram.edge_from
    idx = diagram.edge_index
    seq = []
    passes = []
    i = start_edge
    while True:
        seq.append(i)
        head = edges[i].head
        out = site_transit(diagram, head.site, head.port, policy)
        passes.append(Pass(head.site, head.port, out))
        i = idx[emap[PortRef(head.site, out)]]
        if i == start_edge:
            break
    return ComponentWalk(tuple(seq), tuple(passes), policy)


def traverse_components(diagram: Diagram,
                        policy: TransitPolicy = TransitPolicy.OPPOSITE_EDGE) -> list[ComponentWalk]:
    """Partition the edges into closed walks; walks are ordered by the smallest
    edge index they contain.  Free loops are not included."""
    used = [False] * len(diagram.edges)
    walks = []
    for i in range(len(diagram.edges)):
        if used[i]:
            continue
        w = walk_from(diagram, i, policy)
        for j in w.edges:
            used[j] = True
        walks.append(w)
    return walks


def natural_policy(diagram: Diagram) -> TransitPolicy:
    """Indicator traversal when special nodes are present (their straight
    traversal is not orientation-consistent), opposite-edge otherwise."""
    if any(s.is_special for s in diagram.sites):
        return TransitPolicy.INDICATOR_SPLIT
    return TransitPolicy.OPPOSITE_EDGE


def component_index(diagram: Diagram, policy: TransitPolicy | None = None) -> dict[int, int]:
    """Map edge index -> component number under ``policy``."""
    walks = traverse_components(diagram, policy or natural_policy(diagram))
    return {e: k for k, w in enumerate(walks) for e in w.edges}


def mirror(diagram: Diagram) -> Diagram:
    """Toggle the over-strand of every crossing; nodes and virtuals unchanged."""
    sites = tuple(
        replace(s, over="13" if s.over == "02" else "02") if s.is_crossing else s
        for s in diagram.sites
    )
    return Diagram(sites, diagram.edges, diagram.free_loops)


def reverse(diagram: Diagram) -> Diagram:
    """Reverse every edge orientation."""
    return Diagram(diagram.sites, tuple(Edge(e.head, e.tail) for e in diagram.edges),
                   diagram.free_loops)

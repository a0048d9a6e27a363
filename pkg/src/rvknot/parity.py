"""Nodal and link parity of rigid-vertex graph nodes."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .codec import CROSSING_PASS, GaussCode
from .core import Diagram, TransitPolicy, natural_policy, traverse_components
from .errors import CrossComponentNode, MultiComponent, SingleComponent, UnknownLabel


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> Parity:
        return cls.ODD if n % 2 else cls.EVEN


class ParityPolicy(enum.Enum):
    NODAL_DISTANCE = "nodal"
    LINK_PARITY = "link"


@dataclass(frozen=True)
class ParityMap:
    assignments: Mapping[int, Parity]
    policy: ParityPolicy = field(default=ParityPolicy.NODAL_DISTANCE)

    def __getitem__(self, label: int) -> Parity:
        return self.assignments[label]

    def __len__(self):
        return len(self.assignments)

    def labels(self) -> list[int]:
        return sorted(self.assignments)

    def profile(self) -> tuple[int, int]:
        """(number of even nodes, number of odd nodes)."""
        odd = sum(1 for p in self.assignments.values() if p is Parity.ODD)
        return len(self.assignments) - odd, odd

    def as_strings(self) -> dict[int, str]:
        return {k: self.assignments[k].value for k in sorted(self.assignments)}

    def to_json(self) -> dict:
        return {"policy": self.policy.value,
                "parity": {str(k): v for k, v in self.as_strings().items()}}

    @classmethod
    def from_json(cls, obj: Mapping) -> ParityMap:
        return cls({int(k): Parity(v) for k, v in obj["parity"].items()},
                   ParityPolicy(obj["policy"]))


def _single_component(code: GaussCode):
    comps = [c for c in code.components]
    if len(comps) != 1:
        raise MultiComponent(f"code has {len(comps)} components")
    return comps[0]


def _distance_in(seq: list[int], label) -> int:
    where = [i for i, x in enumerate(seq) if x == label]
    if len(where) != 2:
        raise UnknownLabel(f"label {label} does not occur twice")
    return where[1] - where[0] - 1


def nodal_distance(code: GaussCode, label: int) -> int:
    """Number of node passes strictly between the two passes of ``label``.

    Crossing passes are not counted: the distance is measured in the node
    sequence of the traverse.
    """
    comp = _single_component(code)
    if not any(t.label == label and t.kind != CROSSING_PASS for t in comp):
        raise UnknownLabel(f"no node labelled {label}")
    seq = [t.label for t in comp if t.kind != CROSSING_PASS]
    return _distance_in(seq, label)


def nodal_parity(code: GaussCode) -> ParityMap:
    comp = _single_component(code)
    seq = [t.label for t in comp if t.kind != CROSSING_PASS]
    return ParityMap({label: Parity.of(_distance_in(seq, label)) for label in sorted(set(seq))},
                     ParityPolicy.NODAL_DISTANCE)


def _node_visits(diagram: Diagram, policy: TransitPolicy | None):
    walks = traverse_components(diagram, policy or natural_policy(diagram))
    nodes = set(diagram.node_ids())
    return walks, [[p.site for p in w.passes if p.site in nodes] for w in walks]


def link_parity(diagram: Diagram, policy: TransitPolicy | None = None) -> ParityMap:
    """Nodes shared by two link components are even, self-nodes odd."""
    walks, visits = _node_visits(diagram, policy)
    if len(walks) + diagram.free_loops < 2:
        raise SingleComponent("link parity needs at least two link components")
    owner: dict[int, set[int]] = {}
    for k, seq in enumerate(visits):
        for n in seq:
            owner.setdefault(n, set()).add(k)
    return ParityMap({n: Parity.EVEN if len(owner[n]) == 2 else Parity.ODD for n in sorted(owner)},
                     ParityPolicy.LINK_PARITY)


def parity_assignment(diagram: Diagram, policy: ParityPolicy = ParityPolicy.NODAL_DISTANCE,
                      transit: TransitPolicy | None = None) -> ParityMap:
    """Parity of every node of ``diagram``; virtual sites are ignored.

    Under the nodal-distance policy each component's node sequence is read off
    separately; a node shared between components has no nodal distance.
    """
    if policy is ParityPolicy.LINK_PARITY:
        return link_parity(diagram, transit)
    _, visits = _node_visits(diagram, transit)
    where: dict[int, int] = {}
    out: dict[int, Parity] = {}
    for k, seq in enumerate(visits):
        for n in seq:
            if where.setdefault(n, k) != k:
                raise CrossComponentNode(n)
    for seq in visits:
        for n in set(seq):
            out[n] = Parity.of(_distance_in(seq, n))
    return ParityMap(dict(sorted(out.items())), ParityPolicy.NODAL_DISTANCE)

"""Named example graphs and links.

The graphs stand in for drawings that are described only in words, so each
one is a reconstruction chosen to have the stated Gauss code, parity counts
and replacement outcomes.  All are closed braids (see ``build.braid_closure``)
and therefore planar.
"""

from __future__ import annotations

from .build import braid_closure
from .codec import parse_gauss_code, realize
from .core import Diagram, mirror


def unknot() -> Diagram:
    return Diagram((), (), 1)


def positive_kink() -> Diagram:
    return realize(parse_gauss_code("O1+ U1+"))


def trefoil() -> Diagram:
    """All-positive three-crossing trefoil (right handed)."""
    return braid_closure(2, "1 1 1")


def figure_eight() -> Diagram:
    return braid_closure(3, "1 -2 1 -2")


def borromean() -> Diagram:
    return braid_closure(3, "1 -2 1 -2 1 -2")


def hopf() -> Diagram:
    """Positive Hopf link."""
    return braid_closure(2, "1 1")


def virtual_trefoil() -> Diagram:
    """Two classical crossings with interleaved Gauss code and one virtual crossing."""
    return realize(parse_gauss_code("O1+ O2+ U1+ U2+"))


def nodal_trefoil() -> Diagram:
    """Trefoil shadow with three nodes and one positive crossing.

    All nodes positive gives the right-handed trefoil, all negative an unknot.
    """
    return braid_closure(3, "n1 n1 n2 1")


def code_123132_graph() -> Diagram:
    """A planar graph whose node code is 123132 (one even, two odd nodes).

    Even node positive and odd nodes negative gives the figure-eight knot.
    """
    return braid_closure(3, "n1 n2 n1 2")


def odd_pair() -> tuple[Diagram, Diagram]:
    """Mirror pair of graphs with node code 1212 (both nodes odd).

    All-negative replacement turns the first into a trefoil and the second
    into an unknot.
    """
    g = braid_closure(2, "n1 n1 -1")
    return g, mirror(g)


def linked_component_graph() -> Diagram:
    """Two-component graph: nodes 1 and 3 are self-nodes, node 2 is shared."""
    return braid_closure(4, "n1 n2 n3 2")


def borromean_graph() -> Diagram:
    """Three-component graph whose parity link is the Borromean rings."""
    return braid_closure(3, "n1 -2 1 -2 1 -2")


def unlink_graph() -> Diagram:
    """Three-component graph whose parity link is the three-component unlink."""
    return braid_closure(3, "n1 -1 2 -2")


def many_nodes(n: int) -> Diagram:
    """A single-component closed 2-braid made of ``n`` nodes (n odd)."""
    return braid_closure(2, " ".join(["n1"] * n))

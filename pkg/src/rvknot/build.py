"""Constructors for planar diagrams: closed braids with crossings, nodes and
virtual crossings as generators."""

from __future__ import annotations

import re

from .core import Diagram, Edge, PortRef, Site

# At a braid generator the ports are bottom-left 0, bottom-right 1,
# top-right 2, top-left 3.  Both strands enter from below.
_TOKEN = re.compile(r"^(n|v|s)?(-?)(\d+)$")


def parse_braid_word(word: str) -> list[tuple[str, int, int]]:
    """``"1 -2 n1 v2 s3"`` -> [(kind, position, sign)].

    Bare integers are crossings (negative for the inverse generator), ``n`` a
    standard node, ``v`` a virtual crossing.
    """
    out = []
    for tok in word.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad braid token {tok!r}")
        prefix, minus, num = m.groups()
        pos = int(num)
        if pos < 1:
            raise ValueError(f"bad braid position in {tok!r}")
        kind = {"n": "node", "v": "virtual", None: "crossing", "s": "crossing"}[prefix]
        out.append((kind, pos, -1 if minus else 1))
    return out


def braid_closure(n_strands: int, word: str | list, first_id: int = 1) -> Diagram:
    """Closure of a braid on ``n_strands`` strands, all strands oriented upward.

    Generator ``i`` acts on positions ``i`` and ``i+1``.  Crossing ``+i`` puts
    the strand entering bottom-right on top, which has derived sign +1.
    """
    tokens = parse_braid_word(word) if isinstance(word, str) else list(word)
    pending: list[PortRef | None] = [None] * (n_strands + 1)
    receiver: list[PortRef | None] = [None] * (n_strands + 1)
    sites = []
    edges = []
    sid = first_id

    def attach(pos: int, port: PortRef):
        if pending[pos] is None:
            receiver[pos] = port
        else:
            edges.append(Edge(pending[pos], port))

    for kind, pos, sign in tokens:
        if pos >= n_strands:
            raise ValueError(f"generator {pos} needs more than {n_strands} strands")
        if kind == "crossing":
            sites.append(Site.crossing(sid, "13" if sign > 0 else "02"))
        elif kind == "node":
            sites.append(Site.node(sid))
        else:
            sites.append(Site.virtual(sid))
        attach(pos, PortRef(sid, 0))
        attach(pos + 1, PortRef(sid, 1))
        pending[pos] = PortRef(sid, 3)
        pending[pos + 1] = PortRef(sid, 2)
        sid += 1

    free = 0
    for k in range(1, n_strands + 1):
        if pending[k] is None:
            free += 1
        else:
            edges.append(Edge(pending[k], receiver[k]))
    return Diagram(tuple(sites), tuple(edges), free)

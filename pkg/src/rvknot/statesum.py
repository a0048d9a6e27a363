"""Exact Kauffman bracket state sum.

Rather than enumerating all ``2**n`` states one by one, crossings are
absorbed in turn while a table maps the connectivity of the still-open
strand ends to a histogram of ``(A-exponent, closed loops)``.  Every state
is still accounted for exactly once; the table just merges states that are
indistinguishable from the unprocessed part of the diagram.
"""

from __future__ import annotations

import os
from collections import defaultdict

from .core import Diagram, PortRef
from .errors import NodePresent, TooManyCrossings
from .laurent import LaurentPoly

DEFAULT_MAX_CROSSINGS = 24


def max_crossings_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("RVKNOT_MAX_CROSSINGS")
    return int(env) if env else DEFAULT_MAX_CROSSINGS


def smoothing_pairs(over: str, a_smoothing: bool) -> tuple[tuple[int, int], tuple[int, int]]:
    """Port pairs joined by a smoothing.  The A-smoothing joins each
    over-strand port ``q`` with ``q + 1``."""
    if (over == "02") == a_smoothing:
        return (0, 1), (2, 3)
    return (1, 2), (3, 0)


def contract_virtuals(diagram: Diagram):
    """Follow edges through virtual sites.

    Returns ``(crossings, conn, loops)`` where ``crossings`` lists crossing ids,
    ``conn`` maps each crossing port (as ``4*index + port``) to the crossing port
    at the other end of its strand segment, and ``loops`` counts closed curves
    meeting no crossing (including free loops).
    """
    sites = diagram.site_map
    if any(s.is_node for s in diagram.sites):
        raise NodePresent("diagram still contains nodes")
    crossings = diagram.crossing_ids()
    index = {c: i for i, c in enumerate(crossings)}
    partner: dict[PortRef, PortRef] = {}
    for e in diagram.edges:
        partner[e.tail] = e.head
        partner[e.head] = e.tail

    conn: dict[int, int] = {}
    for c in crossings:
        for p in range(4):
            key = 4 * index[c] + p
            if key in conn:
                continue
            cur = partner[PortRef(c, p)]
            while sites[cur.site].is_virtual:
                cur = partner[PortRef(cur.site, (cur.port + 2) % 4)]
            other = 4 * index[cur.site] + cur.port
            conn[key] = other
            conn[other] = key

    loops = diagram.free_loops
    seen: set[PortRef] = set()
    for v in diagram.virtual_ids():
        for p in range(4):
            start = PortRef(v, p)
            if start in seen:
                continue
            # walk the strand through start until hitting a crossing or closing up
            cur = start
            closed = True
            while True:
                seen.add(cur)
                nxt = partner[cur]
                if not sites[nxt.site].is_virtual:
                    closed = False
                    break
                seen.add(nxt)
                cur = PortRef(nxt.site, (nxt.port + 2) % 4)
                if cur == start:
                    break
            if not closed:
                # mark the opposite direction too so the strand is not revisited
                cur = PortRef(start.site, (start.port + 2) % 4)
                while cur not in seen:
                    seen.add(cur)
                    nxt = partner[cur]
                    if not sites[nxt.site].is_virtual:
                        break
                    seen.add(nxt)
                    cur = PortRef(nxt.site, (nxt.port + 2) % 4)
            else:
                loops += 1
    return crossings, conn, loops


def _processing_order(n: int, conn: dict[int, int]) -> list[int]:
    """Greedy order keeping the set of open ends small."""
    if n == 0:
        return []
    done = [False] * n
    order = []
    for _ in range(n):
        best, best_score = None, None
        for k in range(n):
            if done[k]:
                continue
            # prefer crossings tied to many processed ones, then fewest new ends
            links = sum(1 for p in range(4) if done[conn[4 * k + p] // 4] or conn[4 * k + p] // 4 == k)
            score = (-links, k)
            if best_score is None or score < best_score:
                best, best_score = k, score
        done[best] = True
        order.append(best)
    return order


def bracket_histogram(diagram: Diagram, max_crossings: int | None = None) -> dict[tuple[int, int], int]:
    """Map ``(a - b, loops)`` to the number of states with those values."""
    cap = max_crossings_cap(max_crossings)
    crossings, conn, extra_loops = contract_virtuals(diagram)
    n = len(crossings)
    if n > cap:
        raise TooManyCrossings(f"{n} crossings exceed the cap of {cap}")
    overs = [diagram.site(c).over for c in crossings]
    order = _processing_order(n, conn)

    processed = [False] * n
    # state: tuple of sorted (end, end) pairs -> {(exp, loops): count}
    table: dict[tuple, dict[tuple[int, int], int]] = {(): {(0, 0): 1}}
    for k in order:
        base = 4 * k
        pairs_by_choice = (
            (1, smoothing_pairs(overs[k], True)),
            (-1, smoothing_pairs(overs[k], False)),
        )
        new_table: dict[tuple, dict[tuple[int, int], int]] = defaultdict(lambda: defaultdict(int))
        for state, hist in table.items():
            mate = {}
            for a, b in state:
                mate[a] = b
                mate[b] = a
            for dexp, pairs in pairs_by_choice:
                smooth = {}
                for x, y in pairs:
                    smooth[base + x] = base + y
                    smooth[base + y] = base + x
                new_state, closed = _absorb(base, mate, smooth, conn, processed, k)
                bucket = new_table[new_state]
                for (e, l), cnt in hist.items():
                    bucket[(e + dexp, l + closed)] += cnt
        processed[k] = True
        table = new_table
    final = table.get((), {(0, 0): 1}) if n else {(0, 0): 1}
    return {(e, l + extra_loops): c for (e, l), c in final.items()}


def _absorb(base, mate, smooth, conn, processed, k):
    """Join crossing ``k`` (ports ``base..base+3``) to the open ends in ``mate``.

    Returns the new open-end pairing and the number of loops closed.
    """
    parent = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    degree = defaultdict(int)

    def link(a, b):
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        degree[a] += 1
        degree[b] += 1
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in mate.items():
        if a < b:
            link(a, b)
    for p in range(4):
        x = base + p
        y = smooth[x]
        if x < y:
            link(x, y)
        z = conn[x]
        if z // 4 == k:
            if x < z:
                link(x, z)
        elif processed[z // 4]:
            link(x, z)

    groups = defaultdict(list)
    for x in parent:
        groups[find(x)].append(x)
    new_pairs = []
    closed = 0
    for members in groups.values():
        ends = [x for x in members if degree[x] == 1]
        if ends:
            a, b = ends
            new_pairs.append((a, b) if a < b else (b, a))
        else:
            closed += 1
    new_pairs.sort()
    return tuple(new_pairs), closed


def kauffman_bracket(diagram: Diagram, max_crossings: int | None = None) -> LaurentPoly:
    hist = bracket_histogram(diagram, max_crossings)
    delta = LaurentPoly.delta()
    powers: dict[int, LaurentPoly] = {}
    total = LaurentPoly.zero()
    by_loops: dict[int, dict[int, int]] = defaultdict(dict)
    for (e, l), c in hist.items():
        by_loops[l][e] = by_loops[l].get(e, 0) + c
    for l, terms in by_loops.items():
        if l == 0:
            # only the empty diagram has a zero-loop state
            total = total + LaurentPoly(terms)
            continue
        if l - 1 not in powers:
            powers[l - 1] = delta ** (l - 1)
        total = total + LaurentPoly(terms) * powers[l - 1]
    return total

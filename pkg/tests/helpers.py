"""Random and fixed diagram generators shared by the tests."""

from __future__ import annotations

import random

from rvknot import gallery
from rvknot.build import braid_closure
from rvknot.codec import parse_gauss_code, realize


def random_braid_word(rng: random.Random, strands: int, length: int,
                      node_rate: float = 0.0, virtual_rate: float = 0.0) -> str:
    toks = []
    for _ in range(length):
        pos = rng.randint(1, strands - 1)
        r = rng.random()
        if r < node_rate:
            toks.append(f"n{pos}")
        elif r < node_rate + virtual_rate:
            toks.append(f"v{pos}")
        else:
            toks.append(str(pos) if rng.random() < 0.5 else f"-{pos}")
    return " ".join(toks)


def random_braid(rng: random.Random, max_strands: int = 4, max_len: int = 8,
                 node_rate: float = 0.0, virtual_rate: float = 0.0):
    strands = rng.randint(2, max_strands)
    length = rng.randint(1, max_len)
    return braid_closure(strands, random_braid_word(rng, strands, length, node_rate, virtual_rate))


def random_knot_code(rng: random.Random, n: int, kinds=("crossing",)) -> str:
    """A random one-component signed Gauss code with ``n`` labels."""
    labels = list(range(1, n + 1)) * 2
    rng.shuffle(labels)
    kind = {k: rng.choice(kinds) for k in range(1, n + 1)}
    sign = {k: rng.choice("+-") for k in range(1, n + 1)}
    seen = set()
    toks = []
    for k in labels:
        if kind[k] == "node":
            toks.append(str(k))
        else:
            role = "O" if (k in seen) == (sign[k] == "+" and k % 2 == 0) else "U"
            toks.append(f"{role}{k}{sign[k]}")
        seen.add(k)
    return " ".join(toks)


def random_realized(rng: random.Random, n: int, kinds=("crossing",)):
    return realize(parse_gauss_code(random_knot_code(rng, n, kinds)))


def corpus():
    """Named node-free diagrams used across tests."""
    return {
        "unknot": gallery.unknot(),
        "kink": gallery.positive_kink(),
        "trefoil": gallery.trefoil(),
        "figure_eight": gallery.figure_eight(),
        "hopf": gallery.hopf(),
        "borromean": gallery.borromean(),
        "virtual_trefoil": gallery.virtual_trefoil(),
        "cinquefoil": braid_closure(2, "1 1 1 1 1"),
        "three_twist": braid_closure(3, "1 1 1 -2 1 -2"),
        "virtual_braid": braid_closure(3, "1 v2 1 -2 v1 2"),
    }

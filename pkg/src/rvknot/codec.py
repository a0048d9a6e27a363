"""Gauss codes and the JSON diagram format.

Gauss code text: components separated by ``/``, tokens by whitespace or
commas.  ``7`` is a pass through node 7, ``S7`` a pass through special node 7,
``O7+`` / ``U7-`` the over / under pass of crossing 7 with its sign.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from .core import (
    CROSSING, INDICATORS, NODE, OVER_STRANDS, SPECIAL, STANDARD, VIRTUAL,
    Diagram, Edge, PortRef, Site, TransitPolicy, crossing_sign, natural_policy,
    traverse_components, validate,
)
from .errors import (
    BadToken, DiagramInvalid, EmptyCode, InputError, OddOccurrence, RoleConflict,
)

NODE_PASS = "node"
SPECIAL_PASS = "special"
CROSSING_PASS = "crossing"


@dataclass(frozen=True)
class Token:
    kind: str
    label: int
    role: str | None = None  # "O" or "U" for crossings
    sign: int | None = None

    def __str__(self):
        if self.kind == NODE_PASS:
            return str(self.label)
        if self.kind == SPECIAL_PASS:
            return f"S{self.label}"
        return f"{self.role}{self.label}{'+' if self.sign > 0 else '-'}"

    def relabel(self, label: int) -> Token:
        return Token(self.kind, label, self.role, self.sign)


@dataclass(frozen=True)
class GaussCode:
    components: tuple[tuple[Token, ...], ...]

    def tokens(self):
        return [t for comp in self.components for t in comp]

    def labels(self) -> list[int]:
        seen = []
        for t in self.tokens():
            if t.label not in seen:
                seen.append(t.label)
        return seen

    def render(self) -> str:
        return " / ".join(" ".join(str(t) for t in comp) for comp in self.components)

    def __str__(self):
        return self.render()

    def check(self) -> None:
        """Raise the first violated well-formedness rule."""
        toks = self.tokens()
        if not toks:
            raise EmptyCode()
        by_label: dict[int, list[Token]] = {}
        for t in toks:
            by_label.setdefault(t.label, []).append(t)
        for label in sorted(by_label):
            if len(by_label[label]) != 2:
                raise OddOccurrence(label)
        for label in sorted(by_label):
            a, b = by_label[label]
            if a.kind != b.kind:
                raise RoleConflict(label, "passes of different kinds")
            if a.kind == CROSSING_PASS:
                if {a.role, b.role} != {"O", "U"}:
                    raise RoleConflict(label, "needs exactly one over and one under pass")
                if a.sign != b.sign:
                    raise RoleConflict(label, "sign mismatch")


_TOKEN_RE = re.compile(r"^(?:(\d+)|S(\d+)|([OU])(\d+)([+-]))$")


def parse_gauss_code(text: str) -> GaussCode:
    components = []
    line = 1
    col = 1
    current: list[Token] = []
    for m in re.finditer(r"/|[^\s,/]+|\n|[ \t\r,]+", text):
        piece = m.group(0)
        if piece == "\n":
            line += 1
            col = 1
            continue
        if piece == "/":
            components.append(tuple(current))
            current = []
        elif not piece.strip(" \t\r,"):
            pass
        else:
            tm = _TOKEN_RE.match(piece)
            if not tm:
                raise BadToken(piece, col, line)
            node, special, role, clabel, sign = tm.groups()
            if node is not None:
                tok = Token(NODE_PASS, int(node))
            elif special is not None:
                tok = Token(SPECIAL_PASS, int(special))
            else:
                tok = Token(CROSSING_PASS, int(clabel), role, 1 if sign == "+" else -1)
            if tok.label < 1:
                raise BadToken(piece, col, line)
            current.append(tok)
        col += len(piece)
    components.append(tuple(current))
    code = GaussCode(tuple(components))
    code.check()
    return code


def render_gauss_code(code: GaussCode) -> str:
    return code.render()


# realization

def _pass_ports(token: Token, first: bool, first_token: Token | None) -> tuple[int, int]:
    if token.kind == NODE_PASS:
        return (0, 2) if first else (1, 3)
    if token.kind == SPECIAL_PASS:
        return (0, 1) if first else (2, 3)
    if first:
        return 0, 2
    # first pass entered at 0; pick the second in-port giving the annotated sign
    if first_token.role == "O":
        u = 3 if token.sign > 0 else 1
    else:
        u = 1 if token.sign > 0 else 3
    return u, (u + 2) % 4


def _interleaved(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] < b[0] < a[1] < b[1] or b[0] < a[0] < b[1] < a[1]


def realize(code: GaussCode) -> Diagram:
    """Chord-diagram realization of a Gauss code.

    Each component is a circle carrying its tokens in order; every pair of
    interleaved chords within one component yields one virtual site, placed on
    the edges leaving the first pass of each chord.
    """
    code.check()
    sites: dict[int, Site] = {}
    seen: dict[int, Token] = {}
    ports: list[list[tuple[int, int]]] = []
    for comp in code.components:
        cp = []
        for tok in comp:
            first = tok.label not in seen
            cp.append(_pass_ports(tok, first, seen.get(tok.label)))
            if first:
                seen[tok.label] = tok
            elif tok.kind == CROSSING_PASS:
                over_in = 0 if seen[tok.label].role == "O" else cp[-1][0]
                sites[tok.label] = Site.crossing(tok.label, OVER_STRANDS[over_in % 2])
            if tok.kind == NODE_PASS:
                sites[tok.label] = Site.node(tok.label)
            elif tok.kind == SPECIAL_PASS:
                sites[tok.label] = Site.special(tok.label, "01-23")
        ports.append(cp)

    next_id = max(sites) + 1
    # chains[(component, position)] = virtual passes on the edge leaving that position
    chains: dict[tuple[int, int], list[tuple[int, int, int]]] = {}
    for ci, comp in enumerate(code.components):
        where: dict[int, list[int]] = {}
        for i, tok in enumerate(comp):
            where.setdefault(tok.label, []).append(i)
        chords = sorted((tuple(v) for v in where.values() if len(v) == 2))
        for a, b in itertools.combinations(chords, 2):
            if _interleaved(a, b):
                v = next_id
                next_id += 1
                sites[v] = Site.virtual(v)
                chains.setdefault((ci, a[0]), []).append((v, 0, 2))
                chains.setdefault((ci, b[0]), []).append((v, 1, 3))

    edges = []
    free = 0
    for ci, comp in enumerate(code.components):
        if not comp:
            free += 1
            continue
        n = len(comp)
        for i in range(n):
            j = (i + 1) % n
            src = PortRef(comp[i].label, ports[ci][i][1])
            for v, pin, pout in chains.get((ci, i), []):
                edges.append(Edge(src, PortRef(v, pin)))
                src = PortRef(v, pout)
            edges.append(Edge(src, PortRef(comp[j].label, ports[ci][j][0])))
    return Diagram(tuple(sites.values()), tuple(edges), free)


def emit_gauss_code(diagram: Diagram, basepoint: PortRef | None = None,
                    policy: TransitPolicy | None = None) -> GaussCode:
    """Read off a Gauss code, one component per walk, labels in first-visit order.

    ``basepoint`` is the tail port of the edge to start from; its component is
    emitted first.  Other components follow in order of their smallest site id
    and start from their smallest edge.  Virtual sites emit nothing; each free
    loop contributes an empty component.
    """
    policy = policy or natural_policy(diagram)
    walks = traverse_components(diagram, policy)
    keyed = []
    for w in walks:
        start = 0
        first_key = 0 if basepoint is not None and any(
            diagram.edges[e].tail == basepoint for e in w.edges) else 1
        if first_key == 0:
            start = next(k for k, e in enumerate(w.edges) if diagram.edges[e].tail == basepoint)
        keyed.append(((first_key, min(w.sites())), w, start))
    if basepoint is not None and not any(k[0][0] == 0 for k in keyed):
        raise InputError(f"basepoint {basepoint} is not the tail of any edge")
    keyed.sort(key=lambda x: x[0])

    sites = diagram.site_map
    labels: dict[int, int] = {}
    comps = []
    for _, w, start in keyed:
        toks = []
        passes = w.passes[start:] + w.passes[:start]
        for ps in passes:
            s = sites[ps.site]
            if s.is_virtual:
                continue
            label = labels.setdefault(ps.site, len(labels) + 1)
            if s.is_crossing:
                role = "O" if ps.in_port % 2 == int(s.over[0]) % 2 else "U"
                toks.append(Token(CROSSING_PASS, label, role, crossing_sign(diagram, ps.site)))
            elif s.is_special:
                toks.append(Token(SPECIAL_PASS, label))
            else:
                toks.append(Token(NODE_PASS, label))
        comps.append(tuple(toks))
    comps.extend(() for _ in range(diagram.free_loops))
    return GaussCode(tuple(comps))


def _relabel_first_visit(comps) -> tuple:
    mapping: dict[int, int] = {}
    out = []
    for comp in comps:
        out.append(tuple(t.relabel(mapping.setdefault(t.label, len(mapping) + 1)) for t in comp))
    return tuple(out)


def canonical_form(code: GaussCode) -> str:
    """Rendering invariant under relabeling, cyclic rotation of each component
    and reordering of components."""
    best = None
    comps = list(code.components)
    for perm in itertools.permutations(range(len(comps))):
        ordered = [comps[i] for i in perm]
        rotations = [[c[k:] + c[:k] for k in range(len(c))] or [c] for c in ordered]
        for choice in itertools.product(*rotations):
            s = GaussCode(_relabel_first_visit(choice)).render()
            if best is None or s < best:
                best = s
    return best or ""


def codes_equivalent(a: GaussCode, b: GaussCode) -> bool:
    return canonical_form(a) == canonical_form(b)


# JSON diagram files

_SITE_FIELDS = {
    CROSSING: {"id", "kind", "over"},
    NODE: {"id", "kind", "flavor", "indicator"},
    VIRTUAL: {"id", "kind"},
}


def _locate(text: str, needle: str) -> tuple[int, int]:
    idx = text.find(needle)
    if idx < 0:
        return 1, 1
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return line, col


def _bad(text: str, value, context: str = "") -> BadToken:
    token = json.dumps(value)
    line, col = _locate(text, context + token if context else token)
    return BadToken(str(value), col, line)


def diagram_to_json(diagram: Diagram) -> dict:
    sites = []
    for s in diagram.sites:
        obj = {"id": s.id, "kind": s.kind}
        if s.is_crossing:
            obj["over"] = s.over
        elif s.is_node:
            obj["flavor"] = s.flavor
            if s.is_special:
                obj["indicator"] = s.indicator
        sites.append(obj)
    edges = [{"from": [e.tail.site, e.tail.port], "to": [e.head.site, e.head.port]}
             for e in diagram.edges]
    return {"sites": sites, "edges": edges, "free_loops": diagram.free_loops}


def serialize_diagram(diagram: Diagram) -> str:
    obj = diagram_to_json(diagram)
    lines = ["{", ' "sites": [']
    lines += ["  " + json.dumps(x) + "," for x in obj["sites"]]
    if obj["sites"]:
        lines[-1] = lines[-1][:-1]
    lines += [" ],", ' "edges": [']
    lines += ["  " + json.dumps(x) + "," for x in obj["edges"]]
    if obj["edges"]:
        lines[-1] = lines[-1][:-1]
    lines += [" ],", f' "free_loops": {obj["free_loops"]}', "}"]
    return "\n".join(lines) + "\n"


def diagram_from_json(obj, text: str = "", check: bool = True) -> Diagram:
    if not isinstance(obj, dict):
        raise BadToken(type(obj).__name__, 1, 1)
    for key in obj:
        if key not in ("sites", "edges", "free_loops"):
            raise _bad(text, key)
    sites = []
    for so in obj.get("sites", []):
        if not isinstance(so, dict):
            raise _bad(text, so)
        kind = so.get("kind")
        if kind not in _SITE_FIELDS:
            raise _bad(text, kind, '"kind": ')
        for key in so:
            if key not in _SITE_FIELDS[kind]:
                raise _bad(text, key)
        sid = so.get("id")
        if not isinstance(sid, int) or isinstance(sid, bool):
            raise _bad(text, sid, '"id": ')
        if kind == CROSSING:
            if so.get("over") not in OVER_STRANDS:
                raise _bad(text, so.get("over"), '"over": ')
            sites.append(Site.crossing(sid, so["over"]))
        elif kind == VIRTUAL:
            sites.append(Site.virtual(sid))
        else:
            flavor = so.get("flavor", STANDARD)
            if flavor not in (STANDARD, SPECIAL):
                raise _bad(text, flavor, '"flavor": ')
            if flavor == SPECIAL:
                ind = so.get("indicator")
                if ind not in INDICATORS:
                    raise _bad(text, ind, '"indicator": ')
                sites.append(Site.special(sid, ind))
            else:
                if "indicator" in so:
                    raise _bad(text, "indicator")
                sites.append(Site.node(sid))
    edges = []
    for eo in obj.get("edges", []):
        if not isinstance(eo, dict) or set(eo) != {"from", "to"}:
            raise _bad(text, eo if not isinstance(eo, dict) else sorted(set(eo) ^ {"from", "to"})[0])
        ends = []
        for key in ("from", "to"):
            v = eo[key]
            if (not isinstance(v, list) or len(v) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in v)):
                raise _bad(text, v)
            ends.append(PortRef(v[0], v[1]))
        edges.append(Edge(*ends))
    free = obj.get("free_loops", 0)
    if not isinstance(free, int) or isinstance(free, bool) or free < 0:
        raise _bad(text, free, '"free_loops": ')
    d = Diagram(tuple(sites), tuple(edges), free)
    if check:
        problems = validate(d)
        if problems:
            raise DiagramInvalid(problems)
    return d


def parse_diagram(text: str, check: bool = True) -> Diagram:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadToken(exc.msg, exc.colno, exc.lineno) from None
    return diagram_from_json(obj, text, check)


def load_diagram(text: str) -> Diagram:
    """Accept a JSON diagram, Gauss code text, or ``braid <strands> <word>``.

    In the two text forms everything after ``#`` on a line is a comment.
    """
    if text.lstrip().startswith("{"):
        return parse_diagram(text)
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines()).strip()
    if body.startswith("braid"):
        from .build import braid_closure
        parts = body.split(None, 2)
        try:
            return braid_closure(int(parts[1]), parts[2] if len(parts) > 2 else "")
        except (IndexError, ValueError) as exc:
            raise InputError(f"bad braid description: {exc}") from None
    return realize(parse_gauss_code(body))

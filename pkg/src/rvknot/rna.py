"""RNA bond structures as graphs with special vertices.

The backbone is closed into one oriented loop and every bond becomes a
special node whose indicator marks the unfolding (the two backbone segments
meeting at the bond).  Unfolding splits every node along its indicator;
twisting replaces every node by a full twist of the two backbone segments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .codec import GaussCode, Token, SPECIAL_PASS, realize
from .core import Diagram
from .errors import InputError, NonSpecialNode, OddOccurrence, UnmatchedBracket
from .invariants import InvariantBundle, invariant_bundle
from .moves import simplify
from .laurent import LaurentPoly
from .parity import ParityMap, nodal_parity
from .rewrite import TWIST_RULE, ParityRule, TangleKind, parity_resolve, replace_nodes

_OPEN = {"(": ")", "[": "]", "{": "}", "<": ">"}
_CLOSE = {v: k for k, v in _OPEN.items()}

# Reference folds with known parity profiles.  The three-bond pair is a
# reconstruction: minimal words with the intended profiles.
RECONSTRUCTED_FOLDS = {
    "ABAB": "simple pseudoknot (H-type), both bonds odd",
    "ABCABC": "three-bond pseudoknot with all bonds even (reconstructed fold F1)",
    "ABCACB": "three-bond pseudoknot with one even and two odd bonds (reconstructed fold F2)",
}


@dataclass(frozen=True)
class FoldSpec:
    """Bond word along the backbone.

    Attributes:
        word: bond labels in backbone order; each occurs exactly twice.
        names: display name for each bond, in order of first occurrence.
    """

    word: tuple[str, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.word:
            raise InputError("empty fold word")
        counts: dict[str, int] = {}
        for label in self.word:
            counts[label] = counts.get(label, 0) + 1
        for label, n in counts.items():
            if n != 2:
                raise OddOccurrence(label)
        if not self.names:
            object.__setattr__(self, "names", tuple(dict.fromkeys(self.word)))

    @property
    def bonds(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.word))

    def numeric(self) -> list[int]:
        """The word with bonds numbered 1, 2, ... by first occurrence."""
        index = {b: i + 1 for i, b in enumerate(self.bonds)}
        return [index[b] for b in self.word]

    def normalized(self) -> str:
        """Letters A, B, C, ... by first occurrence, e.g. ``"ABAB"``."""
        letters = [_letter(i) for i in range(len(self.bonds))]
        return "".join(letters[n - 1] for n in self.numeric())

    def __str__(self):
        return " ".join(self.word)


def _letter(i: int) -> str:
    s = ""
    i += 1
    while i:
        i, r = divmod(i - 1, 26)
        s = chr(65 + r) + s
    return s


def parse_fold(text: str) -> FoldSpec:
    """Read a bond word (``"A B A B"``) or dot-bracket text (``"([)]"``).

    In dot-bracket text every bracket family (), [], {}, <> pairs
    independently, so pseudoknots are written with mixed families.
    """
    stripped = text.strip()
    if stripped and re.fullmatch(r"[.()\[\]{}<>\s]+", stripped):
        return _parse_dot_bracket(stripped)
    if stripped.isalpha() and stripped.isupper():
        # compact form such as "ABAB": one letter per bond pass
        return FoldSpec(tuple(stripped))
    return FoldSpec(tuple(stripped.split()))


def _parse_dot_bracket(text: str) -> FoldSpec:
    stacks: dict[str, list[int]] = {k: [] for k in _OPEN}
    partner: dict[int, int] = {}
    chars = [c for c in text if not c.isspace()]
    for pos, c in enumerate(chars):
        if c in _OPEN:
            stacks[c].append(pos)
        elif c in _CLOSE:
            stack = stacks[_CLOSE[c]]
            if not stack:
                raise UnmatchedBracket(pos)
            start = stack.pop()
            partner[start] = pos
            partner[pos] = start
    for stack in stacks.values():
        if stack:
            raise UnmatchedBracket(stack[0])
    # a stem (nested run of same-family pairs) is a single bond
    label_at: dict[int, str] = {}
    n_bonds = 0
    for pos in sorted(partner):
        if pos in label_at or partner[pos] < pos:
            continue
        prev = pos - 1
        if (prev in partner and partner[prev] > prev and chars[prev] == chars[pos]
                and partner[prev] == partner[pos] + 1):
            label = label_at[prev]
        else:
            label = _letter(n_bonds)
            n_bonds += 1
        label_at[pos] = label
        label_at[partner[pos]] = label
    word = []
    for pos in sorted(partner):
        label = label_at[pos]
        opening = partner[pos] > pos
        stem_run = (pos - 1 in label_at and label_at[pos - 1] == label
                    and (partner[pos - 1] > pos - 1) == opening)
        if not stem_run:
            word.append(label)
    if not word:
        raise InputError("dot-bracket text contains no bonds")
    return FoldSpec(tuple(word))


def fold_code(spec: FoldSpec) -> GaussCode:
    return GaussCode((tuple(Token(SPECIAL_PASS, n) for n in spec.numeric()),))


def fold_to_graph(spec: FoldSpec) -> Diagram:
    """Closed backbone with one special node per bond (site id = bond number)."""
    return realize(fold_code(spec))


def unfold(diagram: Diagram) -> Diagram:
    """Split every special node along its indicator."""
    for n in diagram.node_ids():
        if not diagram.site(n).is_special:
            raise NonSpecialNode(n)
    return replace_nodes(diagram, {n: TangleKind.INDICATOR_SMOOTHING for n in diagram.node_ids()})


@dataclass(frozen=True)
class FoldReport:
    spec: FoldSpec
    parity: ParityMap
    unfold_bundle: InvariantBundle
    twist_bundle: InvariantBundle
    simple_pseudoknot: bool
    rule: ParityRule = TWIST_RULE
    note: str | None = None

    def bond_parity(self) -> dict[str, str]:
        return {name: self.parity[i + 1].value for i, name in enumerate(self.spec.names)}

    def to_json(self) -> dict:
        return {
            "word": list(self.spec.word),
            "parity": self.bond_parity(),
            "parity_profile": {"even": self.parity.profile()[0], "odd": self.parity.profile()[1]},
            "rule": self.rule.to_json(),
            "simple_pseudoknot": self.simple_pseudoknot,
            "unfold": self.unfold_bundle.to_json(),
            "twist": self.twist_bundle.to_json(),
            "note": self.note,
        }


def classify_fold(spec: FoldSpec, rule: ParityRule = TWIST_RULE) -> FoldReport:
    graph = fold_to_graph(spec)
    parity = nodal_parity(fold_code(spec))
    unfolded = simplify(unfold(graph))
    ub = invariant_bundle(unfolded)
    tb = invariant_bundle(parity_resolve(graph, parity, rule))
    simple = ub.component_count == 1 and ub.f_poly == LaurentPoly.one()
    return FoldReport(spec, parity, ub, tb, simple, rule, RECONSTRUCTED_FOLDS.get(spec.normalized()))

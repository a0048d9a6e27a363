"""Command-line front end.

Exit codes: 0 success, 1 ``compare --expect-distinct`` did not find the
graphs distinct, 2 input error, 3 an enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .codec import emit_gauss_code, load_diagram, serialize_diagram, diagram_to_json
from .core import TransitPolicy
from .errors import CapExceeded, RVKnotError
from .invariants import CompareConfig, compare, invariant_bundle, resolution_polys
from .moves import MoveSpec, apply_move, scramble
from .parity import ParityPolicy, parity_assignment
from .render import render_chord_svg
from .rewrite import DEFAULT_MAX_NODES, TWIST_RULE, ParityRule, parity_resolve
from .rna import classify_fold, parse_fold

EXIT_OK, EXIT_NOT_DISTINCT, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class OutputEnvelope:
    command: list[str]
    inputs: dict[str, str] = field(default_factory=dict)
    result: object = None
    warnings: list[str] = field(default_factory=list)
    exit_code: int = EXIT_OK
    text: list[str] = field(default_factory=list)
    json_mode: bool = False

    def to_json(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "result": self.result,
                "warnings": self.warnings, "exit_code": self.exit_code}


class _Context:
    def __init__(self, env: OutputEnvelope):
        self.env = env

    def load(self, path: str):
        data = Path(path).read_bytes()
        self.env.inputs[path] = hashlib.sha256(data).hexdigest()
        return load_diagram(data.decode("utf-8"))

    def say(self, line: str = ""):
        self.env.text.append(line)


def _parity_policy(name: str) -> ParityPolicy:
    return ParityPolicy(name)


def _transit(name: str | None) -> TransitPolicy | None:
    return None if name is None else TransitPolicy(name)


def _parity_of(d, args):
    if not d.node_ids():
        from .parity import ParityMap
        return ParityMap({}, _parity_policy(args.policy))
    return parity_assignment(d, _parity_policy(args.policy), _transit(getattr(args, "transit", None)))


def cmd_parity(ctx: _Context, args):
    d = ctx.load(args.file)
    pm = _parity_of(d, args)
    ctx.env.result = {str(k): v for k, v in pm.as_strings().items()}
    for k, v in pm.as_strings().items():
        ctx.say(f"{k}: {v}")
    even, odd = pm.profile()
    ctx.say(f"policy {pm.policy.value}: {even} even node{'' if even == 1 else 's'}, {odd} odd node{'' if odd == 1 else 's'}")


def cmd_resolve(ctx: _Context, args):
    d = ctx.load(args.file)
    rule = ParityRule.parse(args.rule)
    pm = _parity_of(d, args)
    out = parity_resolve(d, pm, rule)
    ctx.env.result = {"rule": rule.to_json(), "parity": pm.to_json(), "diagram": diagram_to_json(out),
                      "gauss": emit_gauss_code(out).render()}
    if args.output:
        Path(args.output).write_text(serialize_diagram(out))
        ctx.say(f"wrote {args.output}")
    else:
        ctx.say(serialize_diagram(out).rstrip("\n"))
    ctx.say(f"gauss: {emit_gauss_code(out).render()}")


def _bundle_lines(ctx: _Context, b, prefix=""):
    ctx.say(f"{prefix}components: {b.component_count}")
    ctx.say(f"{prefix}writhe: {b.writhe}")
    ctx.say(f"{prefix}f: {b.f_poly}")
    ctx.say(f"{prefix}linking matrix: {json.loads(json.dumps(b.to_json()['linking_matrix']))}")


def cmd_invariants(ctx: _Context, args):
    d = ctx.load(args.file)
    result = {}
    if d.node_ids():
        pm = _parity_of(d, args)
        rule = ParityRule.parse(args.rule)
        resolved = parity_resolve(d, pm, rule)
        result["parity"] = pm.to_json()
        result["rule"] = rule.to_json()
        n = len(d.node_ids())
        ctx.say(f"graph with {n} node{'' if n == 1 else 's'}; parity link under {rule}")
    else:
        resolved = d
    b = invariant_bundle(resolved)
    result["bundle"] = b.to_json()
    _bundle_lines(ctx, b)
    if args.set:
        polys = resolution_polys(d, args.max_nodes)
        entries = sorted(((str(p), n) for p, n in polys.items()))
        result["resolution_set"] = [{"f_poly": p, "count": n} for p, n in entries]
        ctx.say(f"resolution set: {sum(polys.values())} links, {len(polys)} distinct f-polynomials")
        for p, n in entries:
            ctx.say(f"  {n} x {p}")
    ctx.env.result = result


def cmd_compare(ctx: _Context, args):
    a, b = ctx.load(args.a), ctx.load(args.b)
    cfg = CompareConfig(_parity_policy(args.policy), ParityRule.parse(args.rule), args.set,
                        args.max_nodes, _transit(args.transit))
    v = compare(a, b, cfg)
    ctx.env.result = v.to_json()
    ctx.say(f"{v.verdict}" + (f" (witness: {v.witness})" if v.witness else ""))
    _bundle_lines(ctx, v.first, "first ")
    _bundle_lines(ctx, v.second, "second ")
    if args.expect_distinct and not v.distinct:
        ctx.env.exit_code = EXIT_NOT_DISTINCT


def cmd_fold(ctx: _Context, args):
    text = args.fold
    if args.file:
        data = Path(text).read_bytes()
        ctx.env.inputs[text] = hashlib.sha256(data).hexdigest()
        text = data.decode("utf-8")
    rule = ParityRule.parse(args.rule) if args.rule else TWIST_RULE
    report = classify_fold(parse_fold(text), rule)
    ctx.env.result = report.to_json()
    ctx.say(f"word: {report.spec}")
    ctx.say("parity: " + ", ".join(f"{k}={v}" for k, v in report.bond_parity().items()))
    ctx.say(f"simple pseudoknot: {'yes' if report.simple_pseudoknot else 'no'}")
    ctx.say(f"unfolded f: {report.unfold_bundle.f_poly}")
    ctx.say(f"twisted ({report.rule}) f: {report.twist_bundle.f_poly}")
    if report.note:
        if "reconstructed" in report.note:
            ctx.env.warnings.append(f"reconstruction: {report.note}")
        ctx.say(f"note: {report.note}")


def cmd_moves(ctx: _Context, args):
    d = ctx.load(args.file)
    applied = []
    if args.script:
        data = Path(args.script).read_bytes()
        ctx.env.inputs[args.script] = hashlib.sha256(data).hexdigest()
        try:
            script = json.loads(data)
        except json.JSONDecodeError as exc:
            from .errors import BadToken
            raise BadToken(exc.msg, exc.colno, exc.lineno) from None
        if isinstance(script, dict):
            script = [script]
        for item in script:
            spec = MoveSpec.from_json(item)
            d = apply_move(d, spec)
            applied.append(spec.to_json())
    if args.scramble:
        d, specs = scramble(d, args.seed, args.scramble)
        applied += [s.to_json() for s in specs]
    ctx.env.result = {"moves": applied, "diagram": diagram_to_json(d)}
    for m in applied:
        ctx.say(f"applied {json.dumps(m)}")
    if args.output:
        Path(args.output).write_text(serialize_diagram(d))
        ctx.say(f"wrote {args.output}")
    else:
        ctx.say(serialize_diagram(d).rstrip("\n"))


def cmd_render(ctx: _Context, args):
    d = ctx.load(args.file)
    svg = render_chord_svg(d, title=args.title)
    Path(args.output).write_text(svg)
    ctx.env.result = {"output": args.output, "sha256": hashlib.sha256(svg.encode()).hexdigest()}
    ctx.say(f"wrote {args.output}")


def cmd_gauss(ctx: _Context, args):
    d = ctx.load(args.file)
    code = emit_gauss_code(d, policy=_transit(args.policy))
    ctx.env.result = {"gauss": code.render()}
    ctx.say(code.render())


def _subparser(common: argparse.ArgumentParser):
    class SubParser(argparse.ArgumentParser):
        def __init__(self, **kwargs):
            kwargs.setdefault("parents", [common])
            super().__init__(**kwargs)

    return SubParser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rvknot", description="Parity invariants of rigid-vertex graphs.")
    p.add_argument("--json", action="store_true", help="Print only the JSON envelope.")
    # --json is also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="Print only the JSON envelope.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_subparser(common))

    def policy_flags(sp, with_rule=True):
        sp.add_argument("--policy", choices=["nodal", "link"], default="nodal",
                        help="Parity convention (default: nodal).")
        sp.add_argument("--transit", choices=["opposite", "indicator"], default=None,
                        help="Traversal rule at nodes (default: indicator when special nodes exist).")
        if with_rule:
            sp.add_argument("--rule", default="even=pos,odd=neg",
                            help="Tangles for even/odd nodes (default: even=pos,odd=neg).")

    sp = sub.add_parser("parity", help="Parity of every node.")
    sp.add_argument("file")
    policy_flags(sp, with_rule=False)
    sp.set_defaults(func=cmd_parity)

    sp = sub.add_parser("resolve", help="Replace nodes by tangles according to parity.")
    sp.add_argument("file")
    policy_flags(sp)
    sp.add_argument("-o", "--output", help="Write the resolved diagram here.")
    sp.set_defaults(func=cmd_resolve)

    sp = sub.add_parser("invariants", help="Invariant bundle of a link or of a graph's parity link.")
    sp.add_argument("file")
    policy_flags(sp)
    sp.add_argument("--set", action="store_true", help="Also list f over every resolution.")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("compare", help="Try to tell two graphs apart.")
    sp.add_argument("a")
    sp.add_argument("b")
    policy_flags(sp)
    sp.add_argument("--set", action="store_true", help="Also compare resolution collections.")
    sp.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    sp.add_argument("--expect-distinct", action="store_true",
                    help="Exit with status 1 unless the verdict is Distinct.")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("fold", help="Classify an RNA bond structure.")
    sp.add_argument("fold", help="Bond word, dot-bracket string, or a file with --file.")
    sp.add_argument("--file", action="store_true", help="Treat the argument as a path.")
    sp.add_argument("--rule", default=None, help="Default: even=twist+,odd=twist-.")
    sp.set_defaults(func=cmd_fold)

    sp = sub.add_parser("moves", help="Apply scripted and/or random moves.")
    sp.add_argument("file")
    sp.add_argument("--script", help="JSON list of moves.")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scramble", type=int, default=0, help="Number of random moves.")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_moves)

    sp = sub.add_parser("render", help="Write an SVG chord diagram.")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--title")
    sp.set_defaults(func=cmd_render)

    sp = sub.add_parser("gauss", help="Emit the Gauss code.")
    sp.add_argument("file")
    sp.add_argument("--policy", choices=["opposite", "indicator"], default=None)
    sp.set_defaults(func=cmd_gauss)
    return p


def run(argv: list[str]) -> OutputEnvelope:
    parser = build_parser()
    args = parser.parse_args(argv)
    env = OutputEnvelope(list(argv))
    ctx = _Context(env)
    try:
        args.func(ctx, args)
    except CapExceeded as exc:
        env.exit_code = EXIT_CAP
        env.warnings.append(f"error: {exc}")
        env.text.append(f"error: {exc}")
    except (RVKnotError, OSError, ValueError) as exc:
        env.exit_code = EXIT_INPUT
        env.warnings.append(f"error: {exc}")
        env.text.append(f"error: {exc}")
    env.json_mode = args.json
    return env


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        env = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else EXIT_OK
    if env.json_mode:
        print(json.dumps(env.to_json(), indent=2, sort_keys=True, default=str))
    else:
        stream = sys.stderr if env.exit_code in (EXIT_INPUT, EXIT_CAP) else sys.stdout
        for line in env.text:
            print(line, file=stream)
    return env.exit_code


if __name__ == "__main__":
    sys.exit(main())

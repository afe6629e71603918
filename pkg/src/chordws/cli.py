"""Command-line interface.

Exit codes: 0 on success (or PASS), 1 on a domain error (or FAIL), 2 on a
usage error.  Domain errors are reported as ``error: <ClassName>: <message>``
on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import chord as chordmod
from .chord import MutationSymmetry, Share, canonical_form, enumerate_diagrams, find_shares, intersection_graph, mutate, mutation_orbit
from .controls import CONTROLS
from .decomp import canonical_decomposition, enumerate_realizations
from .errors import ChordWSError
from .gl11 import framed_conway, gl11_on_diagram
from .graph import parse_graph
from .sl2 import sl2_oracle, sl2_recurrence
from .verify import CHECKERS

SYMMETRIES = {
    "identity": MutationSymmetry.IDENTITY,
    "swap": MutationSymmetry.SWAP_ARCS,
    "reverse": MutationSymmetry.REVERSE_ARCS,
    "rotate": MutationSymmetry.ROTATE_HALF_TURN,
}


def _emit(args, text: str, data) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _sorted_diagrams(ds):
    return sorted(ds, key=lambda d: (d.n, d.word))


def _share_json(s: Share) -> dict:
    return {"chords": sorted(s.chords), "arcs": [list(a) for a in s.arcs]}


def _share_text(s: Share) -> str:
    chords = ",".join(str(c) for c in sorted(s.chords))
    arcs = " ".join(f"{a}:{b}" for a, b in s.arcs)
    return f"{{{chords}}} {arcs}"


def _parse_arcs(text: str):
    try:
        parts = [p.split(":") for p in text.split(",")]
        arcs = [(int(a), int(b)) for a, b in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad arcs {text!r}; expected start:len,start:len")
    if len(arcs) == 1:
        arcs.append((0, 0))
    if len(arcs) != 2:
        raise argparse.ArgumentTypeError("expected one or two arcs")
    return tuple(arcs)


def cmd_parse(args) -> int:
    d = chordmod.parse(args.dow)
    _emit(args, d.to_text(), d.to_json())
    return 0


def cmd_canon(args) -> int:
    d = canonical_form(chordmod.parse(args.dow))
    _emit(args, d.to_text(), d.to_json())
    return 0


def cmd_enumerate(args) -> int:
    ds = _sorted_diagrams(enumerate_diagrams(args.n, cap=args.cap))
    _emit(args, "\n".join(d.to_text() for d in ds), [d.to_json() for d in ds])
    return 0


def cmd_igraph(args) -> int:
    g = intersection_graph(chordmod.parse(args.dow))
    _emit(args, g.to_text(), g.to_json())
    return 0


def cmd_shares(args) -> int:
    shares = find_shares(chordmod.parse(args.dow))
    _emit(args, "\n".join(_share_text(s) for s in shares), [_share_json(s) for s in shares])
    return 0


def cmd_mutate(args) -> int:
    d = chordmod.parse(args.dow)
    arcs = args.arcs
    size = len(d.word)
    chords = frozenset(d.word[(s + k) % size] for s, length in arcs for k in range(length)) if size else frozenset()
    out = mutate(d, Share(chords, arcs), SYMMETRIES[args.sym])
    if args.canonical:
        out = canonical_form(out)
    _emit(args, out.to_text(), out.to_json())
    return 0


def cmd_orbit(args) -> int:
    ds = _sorted_diagrams(mutation_orbit(chordmod.parse(args.dow), cap=args.cap))
    _emit(args, "\n".join(d.to_text() for d in ds), [d.to_json() for d in ds])
    return 0


def _graph_arg(args):
    if args.dow is not None:
        return intersection_graph(chordmod.parse(args.dow))
    if args.graph is None:
        raise SystemExit(_usage("a graph or --dow is required"))
    return parse_graph(args.graph)


def _usage(msg: str) -> int:
    print(f"usage error: {msg}", file=sys.stderr)
    return 2


def cmd_decompose(args) -> int:
    tree = canonical_decomposition(_graph_arg(args))
    _emit(args, tree.to_text(), tree.to_json())
    return 0


def cmd_realize(args) -> int:
    ds = _sorted_diagrams(enumerate_realizations(_graph_arg(args)))
    _emit(args, "\n".join(d.to_text() for d in ds), [d.to_json() for d in ds])
    return 0


def cmd_ws(args) -> int:
    if args.graph is not None:
        if args.system != "gl11":
            return _usage("--graph is only available for gl11")
        value = framed_conway(parse_graph(args.graph))
    else:
        if args.dow is None:
            return _usage("a chord diagram or --graph is required")
        d = chordmod.parse(args.dow)
        if args.system == "gl11":
            value = gl11_on_diagram(d)
        elif args.method == "recurrence":
            value = sl2_recurrence(d)
        else:
            value = sl2_oracle(d)
    _emit(args, str(value), value.to_json())
    return 0


def cmd_verify(args) -> int:
    checker = CHECKERS[args.theorem]
    kwargs = {}
    if args.max is not None:
        kwargs["max_n"] = args.max
    if args.theorem == "graph-dependence":
        kwargs["ws"] = args.ws
    if args.control:
        if args.theorem not in CONTROLS:
            return _usage(f"no negative control for {args.theorem}")
        kwargs.update(CONTROLS[args.theorem])
    report = checker(**kwargs)
    _emit(args, report.to_text(), report.to_json())
    return 0 if report.status == "PASS" else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="chordws", description="Weight systems and invariants of chord diagrams and circle graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.add_argument("--json", action="store_true", help="emit JSON instead of text")
        sp.set_defaults(func=fn)
        return sp

    sp = add("parse", cmd_parse, "validate a double occurrence word and print it with normalized labels")
    sp.add_argument("dow")
    sp = add("canon", cmd_canon, "canonical form up to rotation, reflection and relabeling")
    sp.add_argument("dow")
    sp = add("enumerate", cmd_enumerate, "all canonical diagrams with n chords")
    sp.add_argument("n", type=int)
    sp.add_argument("--cap", type=int, default=chordmod.ENUM_CAP)
    sp = add("igraph", cmd_igraph, "intersection graph of a diagram")
    sp.add_argument("dow")
    sp = add("shares", cmd_shares, "all shares of a diagram as chord set and start:length arcs")
    sp.add_argument("dow")
    sp = add("mutate", cmd_mutate, "apply a mutation to the share given by its arcs")
    sp.add_argument("dow")
    sp.add_argument("--arcs", type=_parse_arcs, required=True, help="start:len[,start:len]")
    sp.add_argument("--sym", choices=sorted(SYMMETRIES), required=True)
    sp.add_argument("--canonical", action="store_true", help="print the canonical form of the result")
    sp = add("orbit", cmd_orbit, "mutation orbit of a diagram (canonical forms)")
    sp.add_argument("dow")
    sp.add_argument("--cap", type=int, default=chordmod.ENUM_CAP)
    sp = add("decompose", cmd_decompose, "canonical split decomposition of a connected graph")
    sp.add_argument("graph", nargs="?", help='graph text, e.g. "4; 0-1,1-2,2-3"')
    sp.add_argument("--dow", help="use the intersection graph of this diagram")
    sp = add("realize", cmd_realize, "all chord diagrams realizing a connected circle graph")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--dow", help="use the intersection graph of this diagram")
    sp = add("ws", cmd_ws, "value of a weight system")
    sp.add_argument("system", choices=["sl2", "gl11"])
    sp.add_argument("dow", nargs="?")
    sp.add_argument("--graph", help="evaluate the framed Conway invariant on a graph (gl11 only)")
    sp.add_argument("--method", choices=["oracle", "recurrence"], default="oracle", help="sl2 evaluation route")
    sp = add("verify", cmd_verify, "run an exhaustive checker")
    sp.add_argument("theorem", choices=sorted(CHECKERS))
    sp.add_argument("--max", type=int, help="largest size to check")
    sp.add_argument("--ws", choices=["sl2", "gl11"], default="sl2", help="weight system for graph-dependence")
    sp.add_argument("--control", action="store_true", help="run against the shipped broken fixture")
    return p


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ChordWSError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line interface: ``skeinlab invariants | equiv | table | check``.

Exit codes: 0 success or EQUIVALENT, 1 failed property suite, 2 bad input,
3 DISTINGUISHED, 4 UNKNOWN, 5 a move that does not act on the diagrams.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks, skein, vinv
from .diagrams.convert import is_realizable, pd_to_gauss, realize
from .diagrams.gauss import GaussDiagram, parse_gauss, render_gauss
from .diagrams.planar import PlanarDiagram, parse_pd
from .diagrams.tables import table
from .errors import DiagramError, LevelMismatch, NotRealizable, SkeinError
from .moves import Bounds, equivalent_mod, get_rule, path_to_json

NAMED = {
    "unknot": "",
    "trefoil": "O1+U2+O3+U1+O2+U3+",
    "fig8": "O1-U2-O3+U4+O2-U1-O4+U3+",
    "vtrefoil": "O1+U2+U1+O2+",
    "hopf+": "O1+U2+ / U1+O2+",
}

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISTINGUISHED, EXIT_UNKNOWN, EXIT_LEVEL = 0, 1, 2, 3, 4, 5


def read_diagram(text: str, kind: str | None = None):
    """Parse ``text`` as a named diagram, a PD code or a Gauss code.

    ``kind`` forces ``"gauss"`` or ``"pd"``; otherwise codes containing
    ``X[`` are PD codes.
    """
    if text.strip() in NAMED:
        return parse_gauss(NAMED[text.strip()])
    if kind == "pd" or (kind is None and "X[" in text):
        return parse_pd(text)
    return parse_gauss(text)


def report(d) -> dict:
    """Invariant report of a diagram as a JSON-ready dict."""
    g = pd_to_gauss(d) if isinstance(d, PlanarDiagram) else d
    planar = d if isinstance(d, PlanarDiagram) else None
    realizable = planar is not None or is_realizable(g)
    if planar is None and realizable:
        planar = realize(g)
    out = {
        "input": render_gauss(g),
        "crossings": g.n_arrows,
        "components": g.n_circles,
        "writhe": sum(s for _, s in g.signs),
        "realizable": realizable,
    }
    if planar is not None:
        out["jones"] = skein.jones(planar).render()
        out["conway"] = skein.conway(planar).render()
        out["homfly"] = skein.homfly(planar).render()
        out["bracket"] = skein.kauffman_bracket(planar).render()
        if planar.n_components == 1:
            out["arf"] = skein.arf(planar)
    if g.is_knot():
        out["odd_writhe"] = vinv.odd_writhe(g)
        out["index_polynomial"] = vinv.index_polynomial(g).render()
    out["linking_matrix"] = vinv.linking_matrix(g).to_json()
    return out


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_invariants(args) -> int:
    text = args.gauss if args.gauss is not None else args.pd if args.pd is not None else args.diagram
    if text is None:
        raise DiagramError("give a diagram with --gauss, --pd or as an argument")
    kind = "gauss" if args.gauss is not None else "pd" if args.pd is not None else None
    d = read_diagram(text, kind)
    rep = report(d)
    rep["input"] = text
    _emit(rep)
    return EXIT_OK


def _split_moves(values: list[str]) -> list[str]:
    names = [m.strip() for part in values for m in part.split(",") if m.strip()]
    for n in names:
        get_rule(n)
    return names


def cmd_equiv(args) -> int:
    rules = [get_rule(n) for n in _split_moves(args.moves)]
    d1, d2 = read_diagram(args.first), read_diagram(args.second)
    d1, d2 = _common_level(d1, d2, rules)
    bounds = Bounds(args.crossing_cap, args.node_cap, args.depth_cap)
    out = equivalent_mod(d1, d2, rules, bounds)
    if out.verdict == "Equivalent":
        print("EQUIVALENT")
        code = EXIT_OK
    elif out.verdict == "Distinguished":
        print(f"DISTINGUISHED({out.certificate[0]})")
        code = EXIT_DISTINGUISHED
    else:
        print("UNKNOWN")
        code = EXIT_UNKNOWN
    if args.path:
        _emit(path_to_json(out.path))
    return code


def _common_level(d1, d2, rules):
    """Planar diagrams when every rule acts on them and both inputs are classical."""
    virtual = [r.name for r in rules if r.level == "gauss" and not r.classical]
    planar_only = [r.name for r in rules if r.level == "planar"]
    if virtual and planar_only:
        raise LevelMismatch(f"moves {virtual} and {planar_only} act on different kinds of diagrams")
    if virtual:
        return tuple(pd_to_gauss(d) if isinstance(d, PlanarDiagram) else d for d in (d1, d2))
    try:
        return tuple(d if isinstance(d, PlanarDiagram) else realize(d) for d in (d1, d2))
    except NotRealizable:
        if planar_only:
            raise LevelMismatch(f"moves {planar_only} need classical diagrams") from None
        return tuple(pd_to_gauss(d) if isinstance(d, PlanarDiagram) else d for d in (d1, d2))


def cmd_table(args) -> int:
    limit = 8 if args.classical else 5
    if not 0 <= args.max_arrows <= limit:
        kind = "classical" if args.classical else "all"
        raise DiagramError(f"--max-arrows must be between 0 and {limit} for {kind} diagrams")
    for g in table(args.max_arrows, classical=args.classical):
        _emit(report(g))
    return EXIT_OK


def cmd_check(args) -> int:
    results = checks.run_suite(args.suite, seed=args.seed)
    for r in results:
        _emit(r.to_json())
    failed = sum(1 for r in results if not r.ok)
    _emit({"suite": args.suite, "seed": args.seed, "properties": len(results), "failed": failed})
    return EXIT_OK if failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skeinlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="invariant report of one diagram")
    inv.add_argument("diagram", nargs="?", help="named diagram, Gauss code or PD code")
    inv.add_argument("--gauss", help="signed Gauss code")
    inv.add_argument("--pd", help="PD code")
    inv.set_defaults(func=cmd_invariants)

    eq = sub.add_parser("equiv", help="equivalence modulo moves")
    eq.add_argument("--moves", action="append", default=[], help="comma separated move names; may repeat")
    eq.add_argument("--crossing-cap", type=int, default=None)
    eq.add_argument("--node-cap", type=int, default=100_000)
    eq.add_argument("--depth-cap", type=int, default=16)
    eq.add_argument("--path", action="store_true", help="print the path as JSON")
    eq.add_argument("first")
    eq.add_argument("second")
    eq.set_defaults(func=cmd_equiv)

    tb = sub.add_parser("table", help="enumerate one-circle Gauss diagrams")
    tb.add_argument("--max-arrows", type=int, required=True)
    tb.add_argument("--classical", action="store_true", help="realizable diagrams only")
    tb.set_defaults(func=cmd_table)

    ck = sub.add_parser("check", help="run a property suite")
    ck.add_argument("suite", choices=checks.SUITES)
    ck.add_argument("--seed", type=int, default=0)
    ck.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LevelMismatch as e:
        print(f"LevelMismatch: {e}", file=sys.stderr)
        return EXIT_LEVEL
    except DiagramError as e:
        name = "SyntaxError" if type(e).__name__ == "DiagramSyntaxError" else type(e).__name__
        print(f"{name}: {e}", file=sys.stderr)
        return EXIT_INPUT
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_INPUT
    except SkeinError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

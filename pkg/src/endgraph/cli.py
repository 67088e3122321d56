"""Command-line entry point: ``endgraph <command> ...``.

Exit codes: 0 success, 2 budget exhausted, 3 premise failure, 4 usage error.
Reports are JSON with sorted keys, so identical invocations print identical
bytes.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction
from pathlib import Path

from .ends import Mode, OracleExhausted, region_goodness
from .extract_nested import CoverFailed, NestStalled, corollary5_nest, extract4, first_crossing
from .extract_theorem2 import BadChain, Budgets, extract, intro_search, verify_chain
from .generators import canonical_end_oracle, canonical_nested_family, make_graph
from .graph_core import (
    AddressError,
    DomainError,
    FamilySpec,
    GraphHandle,
    Window,
    ball,
    format_descriptor,
    parse_descriptor,
    truncation,
    window_from_dot,
    window_to_dot,
)
from .regions import (
    Budget,
    BudgetExhausted,
    IndeterminateError,
    Region,
    complement_components,
    neighbourhood,
    out_degrees,
    vertex_boundary,
)
from .verify import (
    WindowTooLarge,
    brute_min_degree,
    check_certificate,
    densest_subgraph,
    highest_vertex_check,
    k_core,
    peeling_trace,
)

EXIT_OK, EXIT_BUDGET, EXIT_PREMISE, EXIT_USAGE = 0, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _family_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--family", help="branching_tree | leveled_tree_cycles | theorem3 | clique_ray")
    p.add_argument("--descriptor", type=Path, help="JSON family descriptor file")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--rays", type=int)
    p.add_argument("--cross", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-oracle", type=int, default=200_000)
    p.add_argument("--out", type=Path)


def _window_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--ball", help="CENTER,R  (CENTER may be 'root')")
    p.add_argument("--dot", type=Path, help="read the window from a DOT file")


def _spec(args) -> FamilySpec:
    if args.descriptor:
        return parse_descriptor(args.descriptor.read_text())
    if not args.family:
        raise UsageError("give --family or --descriptor")
    params = {"k": args.k}
    for name in ("rays", "cross", "depth"):
        val = getattr(args, name, None)
        if val is not None:
            params[name] = val
    return FamilySpec.make(args.family, **params)


def _graph(args) -> GraphHandle:
    return make_graph(_spec(args))


def _window(args, g: GraphHandle | None) -> Window:
    if getattr(args, "dot", None):
        return window_from_dot(args.dot.read_text())
    if g is None:
        raise UsageError("give a family or --dot")
    if getattr(args, "ball", None):
        try:
            center, r = args.ball.rsplit(",", 1)
            r = int(r)
        except ValueError:
            raise UsageError("--ball expects CENTER,R") from None
        return ball(g, g.root if center == "root" else center, r)
    if args.depth is not None:
        return truncation(g, args.depth)
    raise UsageError("give --ball, --depth or --dot")


def _region(g: GraphHandle, text: str) -> Region:
    kind, _, addr = text.partition("=")
    if not addr:
        raise UsageError("--region expects s=<addr> or cone=<addr>")
    g.validate(addr)
    if kind == "s":
        fam = g.oracle
        if not hasattr(fam, "c_s"):
            raise UsageError("s=<addr> regions exist only for theorem3")
        return fam.c_s(addr)
    if kind == "cone":
        return Region(frozenset(g.cone_boundary(addr)), addr)
    raise UsageError(f"unknown region kind {kind!r}")


def _mode(args) -> Mode:
    s0 = tuple(args.s0.split(",")) if getattr(args, "s0", None) else ()
    connected = not getattr(args, "any_complement", False)
    if getattr(args, "q", None) is not None:
        return Mode.avg_degree(Fraction(args.q), s0=s0, connected=connected)
    return Mode.min_degree(getattr(args, "mode_k", None) or args.k, connected=connected, s0=s0)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True, indent=2)
    if getattr(args, "out", None):
        args.out.write_text(text + "\n")
    else:
        print(text)


# -- commands ------------------------------------------------------------------------

def cmd_gen(args):
    g = _graph(args)
    w = _window(args, g)
    _emit(args, {"descriptor": json.loads(format_descriptor(_spec(args))), "window": w.to_json()})


def cmd_inspect(args):
    g = _graph(args)
    v = args.vertex or g.root
    g.validate(v)
    _emit(args, {
        "vertex": v,
        "neighbors": list(g.neighbors(v)),
        "degree": g.degree(v),
        "level": g.level(v),
        "cone_boundary": list(g.cone_boundary(v)),
    })


def cmd_degrees(args):
    g = _graph(args)
    region = _region(g, args.region)
    budget = Budget(args.budget_oracle)
    degs = out_degrees(g, region, budget)
    verdict = region_goodness(g, region, Mode.min_degree(args.k), budget)
    _emit(args, {
        "region": region.to_json(),
        "boundary": sorted(vertex_boundary(g, region, budget)),
        "neighbourhood": sorted(neighbourhood(g, region, budget)),
        "out_degrees": degs,
        "min_out_degree": verdict.min_out,
        "avg_out_degree": str(verdict.avg_out) if verdict.avg_out is not None else None,
        "complement_components": complement_components(g, region, budget),
    })


def cmd_extract2(args):
    g = _graph(args)
    report = extract(g, canonical_end_oracle(g), _mode(args), Budgets(args.budget_oracle, args.budget_iter))
    data = report.to_json()
    _emit(args, data)
    if not report.complete:
        print(f"iteration budget of {args.budget_iter} reached before stationarity", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_extract4(args):
    g = _graph(args)
    mode = Mode.min_degree(args.k, connected=False) if args.q is None else Mode.avg_degree(args.q, connected=False)
    report = extract4(g, canonical_nested_family(g), args.v or g.root, mode, Budget(args.budget_oracle))
    _emit(args, report.to_json())


def cmd_nest(args):
    g = _graph(args)
    oracle = canonical_end_oracle(g)
    ends = sorted(set(itertools.islice(oracle.ends(), args.ends)))
    fam = corollary5_nest(g, oracle.sequence, itertools.cycle(ends), args.prefix, Budget(args.budget_oracle))
    data = fam.to_json()
    data["first_crossing"] = first_crossing(g, fam.regions)
    _emit(args, data)


def cmd_intro(args):
    g = _graph(args)
    threshold = args.threshold or args.k
    res = intro_search(g, threshold, Budget(args.budget_oracle), args.length, args.budget_iter)
    if isinstance(res, BadChain):
        data = {
            "result": "bad_chain",
            "exhausted": res.exhausted,
            "verified": verify_chain(g, res, threshold),
            "chain": [{"region": s.region.to_json(), "witness": s.witness, "out_degree": s.out_degree}
                      for s in res.chain],
        }
    else:
        data = {"result": "all_good", "separator": sorted(res.separator), "expansions": res.expansions,
                "H_min_degree": res.H.min_degree(), "H": res.H.to_json()}
    _emit(args, data)
    return EXIT_BUDGET if isinstance(res, BadChain) and res.exhausted else EXIT_OK


def cmd_verify(args):
    if args.check == "certificate":
        if not args.report:
            raise UsageError("verify certificate needs --report")
        report = json.loads(args.report.read_text())
        ok = check_certificate(report, _graph(args))
        _emit(args, {"certificate": "valid" if ok else "invalid"})
        return EXIT_OK if ok else 1
    g = _graph(args) if (args.family or args.descriptor) else None
    w = _window(args, g)
    if args.check == "kcore":
        core = k_core(w, args.k)
        _emit(args, "empty" if not len(core) else json.dumps(
            {"k": args.k, "core": list(core.vertices), "peeled": len(peeling_trace(w, args.k))},
            sort_keys=True, indent=2))
    elif args.check == "densest":
        sub, d = densest_subgraph(w)
        _emit(args, {"average_degree": str(d), "vertices": list(sub.vertices)})
    elif args.check == "brute":
        _emit(args, {"k": args.k, "exists": brute_min_degree(w, args.k)})
    elif args.check == "highest":
        if g is None:
            raise UsageError("verify highest needs a theorem3 family")
        _emit(args, {"holds": highest_vertex_check(g, w, seed=args.seed)})
    return EXIT_OK


def cmd_dot(args):
    g = _graph(args)
    _emit(args, window_to_dot(_window(args, g)).rstrip("\n"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="endgraph", description="Finite dense subgraphs from the ends of infinite graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="materialise a window of a family")
    _family_flags(p)
    _window_flags(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("inspect", help="neighbours and cone data of one vertex")
    _family_flags(p)
    p.add_argument("--vertex")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("degrees", help="out-degrees of a region")
    _family_flags(p)
    p.add_argument("--region", required=True, help="s=<addr> (theorem3) or cone=<addr>")
    p.set_defaults(func=cmd_degrees)

    for name, fn in (("extract2", cmd_extract2), ("intro", cmd_intro)):
        p = sub.add_parser(name)
        _family_flags(p)
        p.add_argument("--budget-iter", type=int, default=50)
        if name == "extract2":
            p.add_argument("--q")
            p.add_argument("--s0", help="comma-separated start vertices")
            p.add_argument("--mode-k", type=int, help="degree target if it differs from the family's k")
            p.add_argument("--any-complement", action="store_true",
                           help="do not require G - C to be connected")
        else:
            p.add_argument("--threshold", type=int)
            p.add_argument("--length", type=int, default=10)
        p.set_defaults(func=fn)

    p = sub.add_parser("extract4")
    _family_flags(p)
    p.add_argument("--v")
    p.add_argument("--q")
    p.set_defaults(func=cmd_extract4)

    p = sub.add_parser("nest")
    _family_flags(p)
    p.add_argument("--prefix", type=int, default=50)
    p.add_argument("--ends", type=int, default=2, help="how many ends of the enumeration to interleave")
    p.set_defaults(func=cmd_nest)

    p = sub.add_parser("verify")
    p.add_argument("check", choices=["kcore", "densest", "brute", "highest", "certificate"])
    _family_flags(p)
    _window_flags(p)
    p.add_argument("--report", type=Path)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dot")
    _family_flags(p)
    _window_flags(p)
    p.set_defaults(func=cmd_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or EXIT_OK
    except OracleExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PREMISE if exc.premise_failed else EXIT_BUDGET
    except (BudgetExhausted, IndeterminateError, CoverFailed, NestStalled) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, AddressError, DomainError, WindowTooLarge, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

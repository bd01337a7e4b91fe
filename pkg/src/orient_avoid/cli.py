"""Command-line entry point: ``orient-avoid <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import algebra, constructors, experiments, generators, io, oracle
from .graph import ForbiddenSets, Mode, VertexOrdering, balanced_orientation
from .guards import GuardExceeded


def _dump(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_gen(args) -> int:
    g = generators.generate(args.kind, args.params, seed=args.seed)
    if args.json:
        _dump(io.graph_to_json(g))
    else:
        sys.stdout.write(io.format_graph(g))
    return 0


def cmd_solve(args) -> int:
    g = io.read_graph(args.graph)
    f = io.read_forbidden(g, args.forbidden, args.mode)
    if f.dropped:
        print(f"note: dropped {f.dropped} unattainable forbidden value(s)", file=sys.stderr)
    try:
        d = oracle.find_orientation(g, f)
    except GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 2
    if d is None:
        print("UNSAT")
        return 1
    if args.dot:
        sys.stdout.write(io.orientation_to_dot(d))
    else:
        _dump(io.orientation_to_json(d))
    return 0


def _forbidden_or_empty(g, path, mode):
    if path is None:
        return ForbiddenSets.empty(g)
    return io.read_forbidden(g, path, mode)


def cmd_certify(args) -> int:
    g = io.read_graph(args.graph)
    f = io.read_forbidden(g, args.forbidden, args.mode)
    cert = constructors.HCertificate.from_json(g, io.read_json(args.certificate), f)
    _dump(cert.to_json())
    return 0 if cert.valid else 1


def cmd_construct(args) -> int:
    g = io.read_graph(args.graph)
    f = _forbidden_or_empty(g, args.forbidden, args.mode)
    ordering = VertexOrdering(tuple(args.ordering)) if args.ordering else None
    if args.bound == "third":
        ordering, h = constructors.build_h_third(g, ordering)
    elif args.bound == "two-thirds":
        d = io.read_orientation(g, args.orientation) if args.orientation else balanced_orientation(g)
        ordering, h = constructors.build_h_two_thirds(g, d)
    else:
        try:
            ordering, h = constructors.build_h_random(
                g, Fraction(args.gamma), seed=args.seed, max_attempts=args.max_attempts
            )
        except constructors.ConstructionFailed as exc:
            _dump({"error": str(exc), "diagnostics": exc.diagnostics()})
            return 1
    cert = constructors.certify_h_condition(g, ordering, h, f)
    _dump(cert.to_json())
    return 0 if cert.valid else 1


def cmd_duality(args) -> int:
    ran, bad = experiments.duality_check(args.size, args.trials, args.seed, args.max_norm)
    if bad is None:
        print(f"PASS duality identity on {ran} random instances")
        return 0
    print(f"FAIL duality identity at trial {bad['trial']}")
    _dump(bad)
    return 1


def cmd_at_number(args) -> int:
    g = io.read_graph(args.graph)
    try:
        print(algebra.at_number(g))
    except GuardExceeded as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return 2
    return 0


def cmd_zp_cert(args) -> int:
    g = io.read_graph(args.graph)
    if args.certificate:
        data = io.read_json(args.certificate)
        arcs = [tuple(a) for a in data["arcs"]]
        ok = algebra.zp_certificate(g, args.p, arcs, int(data["u"]))
        _dump({"accepted": ok, "p": args.p})
        return 0 if ok else 1
    for u in range(g.n):
        for arcs in algebra.zp_candidates(g, args.p, u):
            if algebra.zp_certificate(g, args.p, arcs, u):
                _dump({"accepted": True, "p": args.p, "u": u, "arcs": [list(a) for a in arcs]})
                return 0
    _dump({"accepted": False, "p": args.p})
    return 1


def cmd_experiment(args) -> int:
    corpus = experiments.Corpus(
        trials=args.trials,
        n_min=args.n_min,
        n_max=args.n_max,
        probs=tuple(float(p) for p in args.probs.split(",")),
        seed=args.seed,
    )
    records = list(
        experiments.run(
            corpus,
            args.bound,
            Mode(args.mode),
            Fraction(args.gamma),
            args.max_attempts,
            args.timings,
            args.list_size,
        )
    )
    if args.format == "csv":
        body = experiments.to_csv(records)
    else:
        body = experiments.to_jsonl(records + [experiments.summarize(records)])
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    summary = experiments.summarize(records)
    print(
        f"{summary['certificate_valid']}/{summary['instances']} certificates valid, "
        f"{summary['oracle_sat']}/{summary['instances']} oracle SAT",
        file=sys.stderr,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orient-avoid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph")
    p.add_argument("kind", choices=sorted(generators.KINDS))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="JSON instead of the text format")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="search for an F-avoiding orientation")
    p.add_argument("graph")
    p.add_argument("forbidden")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None)
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("certify", help="check an (ordering, H) certificate")
    p.add_argument("graph")
    p.add_argument("forbidden")
    p.add_argument("certificate")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("construct", help="build an (ordering, H) certificate")
    p.add_argument("graph")
    p.add_argument("--bound", choices=experiments.REGIMES, default="third")
    p.add_argument("--forbidden")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=None)
    p.add_argument("--orientation", help="orientation JSON for --bound two-thirds")
    p.add_argument("--ordering", type=int, nargs="+", help="vertex order for --bound third")
    p.add_argument("--gamma", default="1/10")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-attempts", type=int, default=200)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("duality-check", help="permanent vs. naive expansion on random matrices")
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-norm", type=int, default=8)
    p.set_defaults(func=cmd_duality)

    p = sub.add_parser("at-number", help="Alon-Tarsi number by enumeration")
    p.add_argument("graph")
    p.set_defaults(func=cmd_at_number)

    p = sub.add_parser("zp-cert", help="check or search for a Z_p-connectivity certificate")
    p.add_argument("graph")
    p.add_argument("p", type=int)
    p.add_argument("certificate", nargs="?", help='JSON {"u": ..., "arcs": [[t, h], ...]}; search if omitted')
    p.set_defaults(func=cmd_zp_cert)

    p = sub.add_parser("experiment", help="certificate vs. oracle sweep over random graphs")
    p.add_argument("--bound", choices=experiments.REGIMES, default="third")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--probs", default="0.3,0.5,0.8")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="outdeg")
    p.add_argument("--gamma", default="1/10")
    p.add_argument("--max-attempts", type=int, default=200)
    p.add_argument("--list-size", choices=experiments.LIST_SIZES, default="random",
                   help="forbidden-set sizes: uniform up to the certified size, or exactly it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["jsonl", "csv"], default="jsonl")
    p.add_argument("--timings", action="store_true", help="add runtimes (output no longer byte-stable)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

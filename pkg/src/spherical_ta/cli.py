"""Command-line entry point: ``spherical-ta <command> ...``."""

import argparse
import sys
import time

import numpy as np

from ._threads import thread_limit
from .avta import AvtaConfig, enumerate_vertices
from .bench import ALIASES, DEFAULT_EPSILONS, DEFAULT_SIZES, SUITES, run_benchmark, write_records
from .exceptions import IterationLimitError
from .generators import (GenSpec, gen_chm_instance, gen_irredundancy_instance, gen_lp_instance,
                         gen_strict_lp_instance)
from .io import (dump_json, outcome_document, parse_vector, read_matrix_csv, read_vector,
                 write_matrix_csv, write_trace_csv)
from .lp import DEFAULT_BOUND, LpFeasInstance, StrictLpInstance, solve_lp_feasibility, solve_strict_lp
from .mvee import mvee
from .solver import SolverConfig, solve


def _shared():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--oracle", choices=("ta", "spherical"), default="spherical")
    p.add_argument("--trace", metavar="OUT.csv", default=None,
                   help="write the per-iteration gap sequence")
    p.add_argument("--header", action="store_true", help="skip one header line in input CSVs")
    p.add_argument("--output", "-o", default=None, help="write the JSON result here")
    return p


def _sizes(text):
    out = []
    for item in text.split(","):
        rows, _, cols = item.strip().lower().partition("x")
        out.append((int(rows), int(cols)))
    return out


def build_parser():
    shared = _shared()
    parser = argparse.ArgumentParser(prog="spherical-ta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chm", parents=[shared], help="convex hull membership query")
    p.add_argument("--points", required=True, help="CSV, one point per row")
    q = p.add_mutually_exclusive_group(required=True)
    q.add_argument("--query", help="comma separated coordinates")
    q.add_argument("--query-file")

    for name, helptext in (("lpfeas", "feasibility of Ax = b, x >= 0"),
                           ("strictlp", "strict feasibility of Ax < b")):
        p = sub.add_parser(name, parents=[shared], help=helptext)
        p.add_argument("--matrix", required=True, help="CSV holding A")
        p.add_argument("--rhs", required=True, help="CSV holding b")
        if name == "lpfeas":
            p.add_argument("--bound-M", type=float, default=DEFAULT_BOUND)

    p = sub.add_parser("vertices", parents=[shared], help="enumerate hull vertices")
    p.add_argument("--points", required=True)
    p.add_argument("--gamma", type=float, required=True)

    p = sub.add_parser("mvee", parents=[shared], help="minimum-volume enclosing ellipsoid")
    p.add_argument("--points", required=True)
    p.add_argument("--eps-mvee", type=float, default=0.01)
    p.add_argument("--gamma", type=float, default=None,
                   help="drop redundant points with AVTA first, at this robustness")

    p = sub.add_parser("gen", parents=[shared], help="write a random instance")
    p.add_argument("--problem", choices=("chm", "lpfeas", "strictlp", "irredundancy"),
                   default="chm")
    p.add_argument("--kind", choices=("gaussian", "sphere", "uniform"), default="gaussian")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--redundant-fraction", type=float, default=0.0)
    p.add_argument("--infeasible", action="store_true")
    p.add_argument("--recipe", choices=("direct", "certified"), default="certified")
    p.add_argument("--prefix", required=True, help="output files are PREFIX_*.csv")

    p = sub.add_parser("bench", parents=[shared], help="run a benchmark suite")
    p.add_argument("--suite", required=True, choices=SUITES + tuple(ALIASES))
    p.add_argument("--sizes", type=_sizes, default=list(DEFAULT_SIZES), help="e.g. 50x200,100x500")
    p.add_argument("--epsilons", type=lambda t: [float(v) for v in t.split(",")],
                   default=list(DEFAULT_EPSILONS))
    p.add_argument("--seeds", type=int, default=1, help="number of seeds, starting at --seed")
    p.add_argument("--large", action="store_true", help="add the 1000x5000 size")
    return parser


def _config(args, trace=False):
    return SolverConfig(epsilon=args.epsilon, max_iterations=args.max_iters, record_trace=trace)


def _emit(doc, args):
    text = dump_json(doc, args.output)
    if args.output is None:
        print(text)


def _cmd_chm(args):
    X = read_matrix_csv(args.points, header=args.header)
    p = parse_vector(args.query) if args.query else read_vector(args.query_file, args.header)
    out = solve(X, p, _config(args, trace=bool(args.trace)), oracle=args.oracle)
    if args.trace:
        write_trace_csv(out.trace, args.trace)
    _emit(outcome_document(out), args)
    return 0 if not out.is_limit else 3


def _cmd_lp(args, strict):
    A = read_matrix_csv(args.matrix, header=args.header)
    b = read_vector(args.rhs, header=args.header)
    cfg = _config(args)
    t0 = time.perf_counter()
    try:
        if strict:
            res = solve_strict_lp(StrictLpInstance(A, b), cfg, oracle=args.oracle)
        else:
            res = solve_lp_feasibility(LpFeasInstance(A, b, args.bound_M), cfg, oracle=args.oracle)
    except IterationLimitError as exc:
        _emit({"status": "limit", "epsilon": args.epsilon,
               "iterations": exc.outcome.iterations if exc.outcome else None}, args)
        return 3
    doc = {"status": "feasible" if res.feasible else "infeasible", "epsilon": args.epsilon,
           "iterations": int(res.outcome.iterations),
           "elapsed_ms": 1000.0 * (time.perf_counter() - t0)}
    if strict:
        doc.update(x=None if res.x is None else res.x.tolist(),
                   y=None if res.y is None else res.y.tolist(), s=res.s,
                   residual=res.raw_residual, exact_certificate=res.exact_certificate)
    else:
        plane = res.plane
        doc.update(x=None if res.x is None else res.x.tolist(), residual=res.residual,
                   residual_bound=res.residual_bound,
                   certificate=None if plane is None else
                   {"normal": plane.normal.tolist(), "offset": plane.offset})
    _emit(doc, args)
    return 0


def _cmd_vertices(args):
    X = read_matrix_csv(args.points, header=args.header)
    cfg = AvtaConfig(gamma=args.gamma, oracle=args.oracle, seed=args.seed,
                     max_iterations=args.max_iters)
    rep = enumerate_vertices(X, cfg)
    _emit({"vertices": sorted(int(i) for i in rep.vertex_indices),
           "discovery_order": [int(i) for i in rep.vertex_indices],
           "queries": rep.queries, "elapsed_ms": 1000.0 * rep.elapsed}, args)
    return 0


def _cmd_mvee(args):
    X = read_matrix_csv(args.points, header=args.header)
    t0 = time.perf_counter()
    used = np.arange(len(X))
    if args.gamma is not None:
        cfg = AvtaConfig(gamma=args.gamma, oracle=args.oracle, seed=args.seed)
        used = np.sort(enumerate_vertices(X, cfg).vertex_indices)
    ell = mvee(X[used], args.eps_mvee)
    _emit({"center": ell.center_b.tolist(), "shape": ell.shape_M.tolist(),
           "iterations": ell.iterations, "points_used": len(used),
           "elapsed_ms": 1000.0 * (time.perf_counter() - t0)}, args)
    return 0


def _cmd_gen(args):
    spec = GenSpec(args.kind, args.m, args.n, K=args.K, redundant_fraction=args.redundant_fraction,
                   feasible=not args.infeasible, seed=args.seed, recipe=args.recipe)
    pre = args.prefix
    if args.problem == "chm":
        inst = gen_chm_instance(spec)
        write_matrix_csv(f"{pre}_points.csv", inst.points.points)
        write_matrix_csv(f"{pre}_query.csv", inst.query[None, :])
        truth = {"inside": inst.inside, "margin": inst.margin}
    elif args.problem == "irredundancy":
        inst = gen_irredundancy_instance(spec)
        write_matrix_csv(f"{pre}_points.csv", inst.points.points)
        truth = {"vertices": inst.vertex_indices.tolist()}
    else:
        case = gen_lp_instance(spec) if args.problem == "lpfeas" else gen_strict_lp_instance(spec)
        write_matrix_csv(f"{pre}_A.csv", case.instance.a_matrix)
        write_matrix_csv(f"{pre}_b.csv", case.instance.b_vector[None, :])
        truth = {"feasible": bool(case.feasible)}
    dump_json(truth, f"{pre}_truth.json")
    return 0


def _cmd_bench(args):
    seeds = range(args.seed, args.seed + args.seeds)
    records = run_benchmark(args.suite, args.sizes, args.epsilons, seeds, large=args.large)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            write_records(records, fh)
    else:
        write_records(records, sys.stdout)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {
        "chm": _cmd_chm,
        "lpfeas": lambda a: _cmd_lp(a, strict=False),
        "strictlp": lambda a: _cmd_lp(a, strict=True),
        "vertices": _cmd_vertices,
        "mvee": _cmd_mvee,
        "gen": _cmd_gen,
        "bench": _cmd_bench,
    }
    try:
        with thread_limit():
            return handlers[args.command](args)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"spherical-ta: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

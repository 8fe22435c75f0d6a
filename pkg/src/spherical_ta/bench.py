"""Timing runs over generated instances, written as flat CSV tables."""

import csv
import io
import time
from dataclasses import asdict, dataclass, fields

import numpy as np

from ._threads import thread_limit
from .avta import AvtaConfig, avta, avta_plus
from .exceptions import GammaDegenerateError, IterationLimitError
from .generators import (GenSpec, gen_chm_instance, gen_irredundancy_instance, gen_lp_instance,
                         gen_strict_lp_instance)
from .lp import solve_lp_feasibility, solve_strict_lp
from .mvee import mvee
from .solver import SolverConfig, Status, solve

COLUMNS = ("suite", "feasibility", "epsilon", "rows", "cols", "algorithm", "seed", "wall_ms",
           "iterations", "verdict")
VERDICTS = ("feasible", "infeasible", "limit")
DEFAULT_SIZES = ((50, 200), (100, 500), (200, 1000))
LARGE_SIZES = ((1000, 5000),)
DEFAULT_EPSILONS = (0.01, 0.001)
REDUNDANCY_LEVELS = (0.0, 0.2, 0.5)

SUITES = ("chm-gaussian", "chm-sphere", "lpfeas-uniform", "lpfeas-sphere", "strictlp-uniform",
          "strictlp-sphere", "irredundancy-sphere", "irredundancy-gaussian", "mvee")
ALIASES = {"chm": "chm-gaussian", "lpfeas": "lpfeas-uniform", "strictlp": "strictlp-uniform",
           "irredundancy": "irredundancy-sphere"}


@dataclass
class BenchRecord:
    """One timed run. ``epsilon`` holds gamma for irredundancy suites."""

    suite: str
    feasibility: str
    epsilon: float
    rows: int
    cols: int
    algorithm: str
    seed: int
    wall_ms: float
    iterations: int
    verdict: str

    def __post_init__(self):
        if self.wall_ms < 0:
            raise ValueError("wall_ms must be non-negative")
        if self.verdict not in VERDICTS:
            raise ValueError(f"verdict must be one of {VERDICTS}")

    def to_row(self):
        return [self.suite, self.feasibility, repr(float(self.epsilon)), str(self.rows),
                str(self.cols), self.algorithm, str(self.seed), repr(float(self.wall_ms)),
                str(self.iterations), self.verdict]

    @classmethod
    def from_row(cls, row):
        types = {f.name: f.type for f in fields(cls)}
        kw = {}
        for name, value in zip(COLUMNS, row):
            t = types[name]
            kw[name] = float(value) if t in (float, "float") else (
                int(value) if t in (int, "int") else value)
        return cls(**kw)


def write_records(records, fh):
    writer = csv.writer(fh)
    writer.writerow(COLUMNS)
    for rec in records:
        writer.writerow(rec.to_row())


def records_to_csv(records):
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


def read_records(fh):
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None:
        return []
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected header {header}")
    return [BenchRecord.from_row(row) for row in reader if row]


def _timed(fn):
    t0 = time.perf_counter()
    result = fn()
    return result, 1000.0 * (time.perf_counter() - t0)


def _chm_verdict(status):
    return {Status.INSIDE: "feasible", Status.OUTSIDE: "infeasible"}.get(status, "limit")


def _run_chm(kind, m, n, eps, seed, feasible):
    inst = gen_chm_instance(GenSpec(kind, m, n, feasible=feasible, seed=seed))
    cfg = SolverConfig(epsilon=eps)
    out = []
    for name, oracle in (("spherical-ta", "spherical"), ("ta", "ta")):
        res, ms = _timed(lambda: solve(inst.points, inst.query, cfg, oracle=oracle))
        out.append((name, ms, res.iterations, _chm_verdict(res.status)))
    return out


def _run_lp(problem, kind, m, n, eps, seed, feasible):
    spec = GenSpec(kind, m, n, feasible=feasible, seed=seed)
    case = gen_lp_instance(spec) if problem == "lpfeas" else gen_strict_lp_instance(spec)
    if problem == "lpfeas":
        solver = solve_lp_feasibility
    else:
        def solver(inst, cfg, oracle):
            return solve_strict_lp(inst, cfg, oracle=oracle, exact_upgrade=False)
    cfg = SolverConfig(epsilon=eps)
    out = []
    for name, oracle in (("spherical-ta", "spherical"), ("ta", "ta")):
        try:
            res, ms = _timed(lambda: solver(case.instance, cfg, oracle=oracle))
        except IterationLimitError as exc:
            out.append((name, 1000.0 * exc.outcome.elapsed, exc.outcome.iterations, "limit"))
            continue
        except GammaDegenerateError:
            # no usable x could be formed: reported like an exhausted budget
            out.append((name, 0.0, 0, "limit"))
            continue
        verdict = "feasible" if res.feasible else "infeasible"
        out.append((name, ms, res.outcome.iterations, verdict))
    return out


def _irredundancy_instance(kind, m, n, fraction, seed):
    inst = gen_irredundancy_instance(GenSpec(kind, m, n, redundant_fraction=fraction, seed=seed,
                                             min_robustness=1e-9))
    return inst, 0.5 * inst.robustness


def _run_irredundancy(kind, m, n, fraction, seed):
    inst, gamma = _irredundancy_instance(kind, m, n, fraction, seed)
    cfg = AvtaConfig(gamma=gamma, seed=seed)
    out = []
    for name, fn in (("avta+", avta_plus), ("avta", avta)):
        try:
            rep, ms = _timed(lambda: fn(inst.points, cfg))
        except IterationLimitError:
            out.append((name, 0.0, 0, "limit"))
            continue
        out.append((name, ms, rep.queries, "feasible"))
    return gamma, out


def _run_mvee(m, n, eps, seed):
    K = max(m + 1, n // 100)
    inst, gamma = _irredundancy_instance("gaussian", m, n, 1.0 - K / n, seed)
    cfg = AvtaConfig(gamma=gamma, seed=seed)
    out = []
    full, ms = _timed(lambda: mvee(inst.points, eps))
    out.append(("mvee", ms, full.iterations, "feasible"))
    for name, fn in (("avta+mvee", avta_plus), ("avta-mvee", avta)):
        def pipeline():
            rep = fn(inst.points, cfg)
            return mvee(inst.points.subset(np.sort(rep.vertex_indices)), eps)
        ell, ms = _timed(pipeline)
        out.append((name, ms, ell.iterations, "feasible"))
    return out


def warm_up():
    """Load the compiled kernels so the first timed run does not pay for it."""
    pts = np.array([[1.0, 0.0], [-1.0, 0.5], [0.0, -1.0]])
    for oracle in ("spherical", "ta"):
        solve(pts, np.zeros(2), SolverConfig(epsilon=0.1), oracle=oracle)


def run_benchmark(suite, sizes=DEFAULT_SIZES, epsilons=DEFAULT_EPSILONS, seeds=(0,),
                  fractions=REDUNDANCY_LEVELS, large=False):
    """Run a suite and return its :class:`BenchRecord` rows.

    Sizes are (rows, cols) pairs: (m, n) for point sets, the matrix shape
    for LP suites. ``large`` appends the 1000 x 5000 size.
    """
    suite = ALIASES.get(suite, suite)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    sizes = list(sizes) + (list(LARGE_SIZES) if large else [])
    records = []
    family, _, kind = suite.partition("-")
    warm_up()
    with thread_limit():
        for m, n in sizes:
            for seed in seeds:
                if family == "irredundancy":
                    for frac in fractions:
                        gamma, rows = _run_irredundancy(kind, m, n, frac, seed)
                        label = f"{round(100 * frac)}%"
                        records += [BenchRecord(suite, label, gamma, m, n, a, seed, ms, it, v)
                                    for a, ms, it, v in rows]
                    continue
                for eps in epsilons:
                    if family == "mvee":
                        rows = _run_mvee(m, n, eps, seed)
                        records += [BenchRecord(suite, "feasible", eps, m, n, a, seed, ms, it, v)
                                    for a, ms, it, v in rows]
                        continue
                    for feasible in (True, False):
                        if family == "chm":
                            rows = _run_chm(kind, m, n, eps, seed, feasible)
                        else:
                            rows = _run_lp(family, kind, m, n, eps, seed, feasible)
                        label = "feasible" if feasible else "infeasible"
                        records += [BenchRecord(suite, label, eps, m, n, a, seed, ms, it, v)
                                    for a, ms, it, v in rows]
    return records


def summarize(records):
    """Median wall time per (suite, feasibility, epsilon, size, algorithm)."""
    groups = {}
    for r in records:
        key = (r.suite, r.feasibility, r.epsilon, r.rows, r.cols, r.algorithm)
        groups.setdefault(key, []).append(r.wall_ms)
    return {k: float(np.median(v)) for k, v in groups.items()}


def as_dicts(records):
    return [asdict(r) for r in records]

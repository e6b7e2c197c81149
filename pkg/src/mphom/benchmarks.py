"""Benchmark harness: system sizes and wall times over a seeded corpus.

Each record captures, for one instance/algorithm pair, the linear-system
shape (variables, equations, average entries per equation), the wall time
of the solver call alone, the computed dimension, and context about the
operands (thickness of the target, its Betti-restricted variant, and the
Betti numbers of both sides).  Rows are plain CSV with a fixed column
order; timing fields are the only nondeterministic ones.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dualhom import dual_context, hom_exact_dual, hom_restricted_dual
from .generators import random_module
from .homspace import hom_direct, hom_exact, hom_mixed, hom_restricted
from .localalg import CokernelCache, thickness, thickness_at_degrees

CSV_COLUMNS = (
    "instance",
    "algorithm",
    "variables",
    "equations",
    "avg_entries",
    "time_s",
    "dim_hom",
    "thick_target",
    "thick_target_betti",
    "b0_source",
    "b1_source",
    "b0_target",
    "b1_target",
)

PRIMAL_ALGORITHMS = {
    "direct": hom_direct,
    "a": hom_restricted,
    "mixed": hom_mixed,
    "b": hom_exact,
}

DUAL_ALGORITHMS = {
    "a-star": hom_restricted_dual,
    "b-star": hom_exact_dual,
}


@dataclass(frozen=True)
class BenchRecord:
    instance: str
    algorithm: str
    variables: int
    equations: int
    avg_entries: float
    time_s: float
    dim_hom: int
    thick_target: int
    thick_target_betti: int
    b0_source: int
    b1_source: int
    b0_target: int
    b1_target: int

    def row(self):
        return [
            self.instance,
            self.algorithm,
            self.variables,
            self.equations,
            f"{self.avg_entries:.4f}",
            f"{self.time_s:.6f}",
            self.dim_hom,
            self.thick_target,
            self.thick_target_betti,
            self.b0_source,
            self.b1_source,
            self.b0_target,
            self.b1_target,
        ]


def record_from_basis(instance, basis, xp, yp, target_cache=None):
    """Assemble one BenchRecord from a finished Hom computation."""
    cache = target_cache or CokernelCache(yp.matrix)
    betti_degrees = set(xp.matrix.rows) | set(xp.matrix.cols)
    stats = basis.stats
    return BenchRecord(
        instance=instance,
        algorithm=basis.algorithm,
        variables=stats.variables,
        equations=stats.equations,
        avg_entries=stats.avg_entries,
        time_s=stats.solve_seconds,
        dim_hom=basis.dim,
        thick_target=thickness(yp, cache),
        thick_target_betti=thickness_at_degrees(yp, betti_degrees, cache),
        b0_source=xp.n_generators,
        b1_source=xp.n_relations,
        b0_target=yp.n_generators,
        b1_target=yp.n_relations,
    )


def _bench_one(args):
    (seed, d, gens, rels, coord_range, thickness_hint, p,
     algorithms, with_duals) = args
    xp = random_module(seed, d, gens, rels, coord_range, thickness_hint, p)
    records = []
    cache = CokernelCache(xp.matrix)
    instance = f"end-{seed}"
    for name in algorithms:
        basis = PRIMAL_ALGORITHMS[name](xp, xp)
        records.append(record_from_basis(instance, basis, xp, xp, cache))
    if with_duals and not xp.is_zero_module():
        ctx = dual_context(xp, xp)
        for name, func in DUAL_ALGORITHMS.items():
            basis = func(xp, xp, context=ctx)
            records.append(record_from_basis(instance, basis, xp, xp, cache))
    return records


def run_bench(
    count,
    seed=0,
    d=2,
    gens=8,
    rels=8,
    coord_range=8,
    thickness_hint=None,
    p=2,
    algorithms=("b", "a", "mixed", "direct"),
    with_duals=False,
    jobs=1,
):
    """End(X) benchmark over `count` seeded instances; returns records.

    With jobs > 1 the instances run in parallel workers; records are
    collected and ordered by instance before writing, so the CSV layout
    is deterministic up to the timing fields.
    """
    tasks = [
        (seed + k, d, gens, rels, coord_range, thickness_hint, p,
         tuple(algorithms), with_duals)
        for k in range(count)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_bench_one, tasks))
    else:
        chunks = [_bench_one(t) for t in tasks]
    records = [rec for chunk in chunks for rec in chunk]
    records.sort(key=lambda r: (r.instance, r.algorithm))
    return records


def write_csv(records, path):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow(rec.row())

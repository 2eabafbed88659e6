"""Timing harness comparing the two merge engines on generated grid fixtures."""
from __future__ import annotations

import statistics
import time
import tracemalloc
from dataclasses import asdict, dataclass

from .congruence import ENGINES, QuotientComplex, chain_congruence
from .errors import MergeError, ParameterError
from .generate import make_grid
from .vertex import DEFAULT_EPSILON


class EngineDisagreement(MergeError):
    code = "ENGINE_DISAGREEMENT"
    exit_status = 3


@dataclass
class BenchRow:
    grid: str
    engine: str
    cells: tuple[int, int, int]
    reps: int
    min_s: float
    median_s: float
    mean_s: float
    max_s: float
    peak_alloc_mib: float


def engines_agree(aa: QuotientComplex, sp: QuotientComplex) -> list[str]:
    """Differences between an ``aa`` result and a ``sparse`` result (empty when they agree)."""
    out = []
    if aa.ev != sp.delta0.row_supports():
        out.append("ev differs from delta0 row pattern")
    if aa.fe != sp.delta1.row_supports():
        out.append("fe differs from delta1 row pattern")
    for name in ("vclasses", "eclasses", "fclasses"):
        if getattr(aa, name).classes != getattr(sp, name).classes:
            out.append(f"{name} differ")
    if aa.dropped_edges != sp.dropped_edges or aa.dropped_faces != sp.dropped_faces:
        out.append("dropped cells differ")
    return out


def _peak_mib(fn) -> float:
    tracemalloc.start()
    try:
        fn()
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()
    return peak / 2**20


def run_benchmark(
    shapes, reps: int = 5, seed: int = 0, jitter: float = 0.0, epsilon: float = DEFAULT_EPSILON
) -> list[BenchRow]:
    if reps < 1:
        raise ParameterError("repetitions must be >= 1")
    rows = []
    for shape in shapes:
        acc = make_grid(shape, jitter=jitter, seed=seed, epsilon=epsilon)
        runs = {e: (lambda e=e: chain_congruence(acc, epsilon, engine=e)) for e in ENGINES}
        # warm-up doubles as the agreement check and the allocation measurement
        results = {e: fn() for e, fn in runs.items()}
        diff = engines_agree(results["aa"], results["sparse"])
        if diff:
            raise EngineDisagreement(f"grid {shape}: " + "; ".join(diff))
        for e, fn in runs.items():
            peak = _peak_mib(fn)
            times = []
            for _ in range(reps):
                t0 = time.perf_counter()
                fn()
                times.append(time.perf_counter() - t0)
            rows.append(
                BenchRow(
                    grid="x".join(map(str, shape)),
                    engine=e,
                    cells=results[e].counts,
                    reps=reps,
                    min_s=min(times),
                    median_s=statistics.median(times),
                    mean_s=statistics.mean(times),
                    max_s=max(times),
                    peak_alloc_mib=peak,
                )
            )
    return rows


def ratios(rows: list[BenchRow]) -> dict[str, float]:
    """Mean-time ratio sparse/aa per grid."""
    by = {(r.grid, r.engine): r for r in rows}
    return {g: by[g, "sparse"].mean_s / by[g, "aa"].mean_s for g, e in by if e == "aa" and (g, "sparse") in by}


def format_table(rows: list[BenchRow]) -> str:
    head = f"{'grid':>8} {'engine':>7} {'V/E/F':>15} {'reps':>5} {'min ms':>9} {'median ms':>10} {'mean ms':>9} {'peak MiB':>9}"
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(
            f"{r.grid:>8} {r.engine:>7} {'/'.join(map(str, r.cells)):>15} {r.reps:>5} "
            f"{r.min_s * 1e3:9.2f} {r.median_s * 1e3:10.2f} {r.mean_s * 1e3:9.2f} {r.peak_alloc_mib:9.2f}"
        )
    for g, x in ratios(rows).items():
        lines.append(f"grid {g}: sparse/aa mean time ratio = {x:.2f}x (engines agree)")
    return "\n".join(lines) + "\n"


def rows_to_json(rows: list[BenchRow]) -> dict:
    return {"rows": [asdict(r) for r in rows], "ratios_sparse_over_aa": ratios(rows)}

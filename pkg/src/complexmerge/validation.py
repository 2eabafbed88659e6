"""Topological self-checks for merged complexes."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .congruence import QuotientComplex
from .sparse import ClassPartition, SignedSparseMatrix, matmul


@dataclass
class ValidationReport:
    dd_zero: bool | None  # None when the complex carries no signed operators
    euler_value: int
    euler_expected: int | None
    partitions_ok: bool
    cells_ok: bool
    counts: tuple[int, int, int]
    degenerate_dropped: dict[str, int]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.dd_zero is not False and self.partitions_ok and self.cells_ok


def check_dd_zero(delta0: SignedSparseMatrix, delta1: SignedSparseMatrix) -> bool:
    return matmul(delta1, delta0).nnz == 0


def euler_characteristic(counts: Sequence[int]) -> int:
    """Alternating sum ``c0 - c1 + c2 - ...``."""
    return sum(c if p % 2 == 0 else -c for p, c in enumerate(counts))


def _partition_violations(
    name: str, classes: ClassPartition, size: int, dropped: Sequence[int], ncells: int
) -> list[str]:
    out = []
    if classes.size != size:
        out.append(f"{name}: class map is over {classes.size} indices, expected {size}")
    if len(classes) != ncells:
        out.append(f"{name}: {len(classes)} classes for {ncells} output cells")
    seen: dict[int, str] = {}
    for k, c in enumerate(classes.classes):
        for i in c:
            if i in seen:
                out.append(f"{name}: index {i + 1} in {seen[i]} and class {k + 1}")
            seen[i] = f"class {k + 1}"
    for i in dropped:
        if i in seen:
            out.append(f"{name}: index {i + 1} in {seen[i]} and dropped list")
        seen[i] = "dropped list"
    if set(seen) != set(range(size)):
        missing = sorted(set(range(size)) - set(seen))
        extra = sorted(set(seen) - set(range(size)))
        if missing:
            out.append(f"{name}: indices not covered: {[i + 1 for i in missing[:10]]}")
        if extra:
            out.append(f"{name}: indices out of range: {[i + 1 for i in extra[:10]]}")
    return out


def partition_violations(q: QuotientComplex, input_sizes: Sequence[int] | None = None) -> list[str]:
    sizes = tuple(input_sizes) if input_sizes is not None else q.source_counts
    return (
        _partition_violations("vertices", q.vclasses, sizes[0], (), len(q.vertices))
        + _partition_violations("edges", q.eclasses, sizes[1], q.dropped_edges, len(q.ev))
        + _partition_violations("faces", q.fclasses, sizes[2], q.dropped_faces, len(q.fe))
    )


def check_partitions(q: QuotientComplex, input_sizes: Sequence[int] | None = None) -> bool:
    return not partition_violations(q, input_sizes)


def _cell_violations(q: QuotientComplex) -> list[str]:
    out = []
    nv, ne = len(q.vertices), len(q.ev)
    for name, cells, n in (("ev", q.ev, nv), ("fe", q.fe, ne)):
        for k, c in enumerate(cells):
            if list(c) != sorted(set(c)):
                out.append(f"{name}[{k + 1}] is not sorted and duplicate-free")
            if c and (min(c) < 0 or max(c) >= n):
                out.append(f"{name}[{k + 1}] refers to a missing facet")
    for name, delta, cells in (("delta0", q.delta0, q.ev), ("delta1", q.delta1, q.fe)):
        if delta is not None and delta.row_supports() != [tuple(c) for c in cells]:
            out.append(f"{name} row pattern disagrees with {'ev' if name == 'delta0' else 'fe'}")
    return out


def validate_quotient(
    q: QuotientComplex, input_sizes: Sequence[int] | None = None, euler_expected: int | None = None
) -> ValidationReport:
    part = partition_violations(q, input_sizes)
    cells = _cell_violations(q)
    violations = part + cells

    dd_zero = None
    if q.delta0 is not None and q.delta1 is not None:
        if q.delta1.ncols != q.delta0.nrows:
            dd_zero = False
            violations.append(f"delta1 has {q.delta1.ncols} columns, delta0 has {q.delta0.nrows} rows")
        else:
            product = matmul(q.delta1, q.delta0)
            dd_zero = product.nnz == 0
            if not dd_zero:
                violations.append(f"delta1 @ delta0 has {product.nnz} nonzeros")

    euler = euler_characteristic(q.counts)
    if euler_expected is not None and euler != euler_expected:
        # advisory only
        violations.append(f"euler characteristic {euler} differs from expected {euler_expected}")
    return ValidationReport(
        dd_zero=dd_zero,
        euler_value=euler,
        euler_expected=euler_expected,
        partitions_ok=not part,
        cells_ok=not cells,
        counts=q.counts,
        degenerate_dropped={"edges": len(q.dropped_edges), "faces": len(q.dropped_faces)},
        violations=violations,
    )

"""Merge block-diagonal local coboundary accumulators into one global complex.

Two engines are provided:

* ``aa`` works on cells as lists of facet indices. It is fast but discards
  orientation, so it only produces ``ev``/``fe``.
* ``sparse`` works on the signed matrices, tracks member orientations and
  produces the global coboundary operators ``delta0``/``delta1``.

Class maps always refer to the original (pre-merge) indices of each rank.
Cells that collapse below ``rank + 1`` distinct facets are dropped and listed
in ``dropped``; they are not members of any class.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DDNonZeroError, ParameterError, PartitionError, SchemaError
from .sparse import (
    ClassPartition,
    ColumnVector,
    SignedSparseMatrix,
    matmul,
    merge_columns,
    signed_column_signature,
)
from .vertex import DEFAULT_EPSILON, as_point_cloud, vertex_congruence

ENGINES = ("aa", "sparse")

Cell = tuple[int, ...]


@dataclass(frozen=True)
class AccumulatorComplex:
    """Vertex instances plus the block-diagonal accumulators of all local complexes."""

    vertices: np.ndarray
    delta0: SignedSparseMatrix
    delta1: SignedSparseMatrix

    def __post_init__(self):
        object.__setattr__(self, "vertices", as_point_cloud(self.vertices))
        self.validate()

    def validate(self) -> None:
        n = len(self.vertices)
        if self.delta0.ncols != n:
            raise SchemaError(f"delta0 has {self.delta0.ncols} columns but there are {n} vertices")
        if self.delta1.ncols != self.delta0.nrows:
            raise SchemaError(
                f"delta1 has {self.delta1.ncols} columns but delta0 has {self.delta0.nrows} rows"
            )
        for i, (idx, co) in enumerate(self.delta0.iter_rows()):
            if sorted(co.tolist()) != [-1, 1]:
                raise SchemaError(f"delta0 row {i + 1} must hold exactly one -1 and one +1, got {co.tolist()}")
        for i, (idx, co) in enumerate(self.delta1.iter_rows()):
            if len(idx) < 3:
                raise SchemaError(f"delta1 row {i + 1} has {len(idx)} nonzeros, need at least 3")
            if np.any(np.abs(co) != 1):
                raise SchemaError(f"delta1 row {i + 1} has coefficients outside {{-1, +1}}")

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), self.delta0.nrows, self.delta1.nrows


@dataclass
class QuotientComplex:
    vertices: np.ndarray
    ev: list[Cell]
    fe: list[Cell]
    vclasses: ClassPartition
    eclasses: ClassPartition
    fclasses: ClassPartition
    delta0: SignedSparseMatrix | None = None
    delta1: SignedSparseMatrix | None = None
    dropped_edges: tuple[int, ...] = ()
    dropped_faces: tuple[int, ...] = ()
    engine: str = "sparse"

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.vertices), len(self.ev), len(self.fe)

    @property
    def source_counts(self) -> tuple[int, int, int]:
        return self.vclasses.size, self.eclasses.size, self.fclasses.size


@dataclass
class RankResult:
    cells: list[Cell]
    classes: ClassPartition
    dropped: tuple[int, ...]
    delta: SignedSparseMatrix | None = None


def _check_rank(delta: SignedSparseMatrix, inclasses: ClassPartition, dim: int) -> None:
    if dim < 1:
        raise ParameterError(f"cell rank must be >= 1, got {dim}")
    if inclasses.size != delta.ncols:
        raise PartitionError(
            f"facet classes cover {inclasses.size} indices but the matrix has {delta.ncols} columns"
        )


def cell_congruence_aa(delta: SignedSparseMatrix, inclasses: ClassPartition, dim: int) -> RankResult:
    """Unsigned cell congruence on facet-index lists.

    Each row of ``delta`` is read as the set of its facet columns, facets are
    renamed to their class numbers, cells with ``dim`` or fewer distinct facets
    are dropped, and the remaining cells are grouped by their sorted facet set.
    """
    _check_rank(delta, inclasses, dim)
    cls_of, _ = inclasses.lookup()
    groups: dict[Cell, list[int]] = {}
    dropped = []
    for i, (idx, _) in enumerate(delta.iter_rows()):
        key = tuple(sorted({int(k) for k in cls_of[idx] if k >= 0}))
        if len(key) <= dim:
            dropped.append(i)
            continue
        groups.setdefault(key, []).append(i)
    cells = list(groups)
    classes = ClassPartition(tuple(map(tuple, groups.values())), delta.nrows)
    return RankResult(cells, classes, tuple(dropped))


def _row_signature(row: tuple[np.ndarray, np.ndarray], ncols: int):
    idx, co = row
    canon, sign = signed_column_signature(ColumnVector(ncols, tuple(idx.tolist()), tuple(co.tolist())))
    return (canon.indices, canon.coeffs), sign


def _signatures(rows: list, ncols: int, threads: int | None):
    if threads and threads > 1 and len(rows) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_row_signature, rows, [ncols] * len(rows)))
    return [_row_signature(r, ncols) for r in rows]


def cell_congruence_sparse(
    delta: SignedSparseMatrix, lo: ClassPartition, dim: int, threads: int | None = None
) -> RankResult:
    """Signed cell congruence.

    Columns are merged per lower-rank class after multiplying each member column by
    its sign; rows with ``dim`` or fewer surviving nonzeros are dropped; the rest
    are grouped by equality up to a global sign. Each class is represented by its
    first row, and member signs give each row's orientation relative to it.
    """
    _check_rank(delta, lo, dim)
    merged = merge_columns(delta, lo)
    rows = list(merged.iter_rows())
    live = [i for i, (idx, _) in enumerate(rows) if len(idx) > dim]
    dropped = tuple(i for i, (idx, _) in enumerate(rows) if len(idx) <= dim)
    sigs = _signatures([rows[i] for i in live], merged.ncols, threads)

    groups: dict[tuple, list[int]] = {}
    signs: dict[tuple, list[int]] = {}
    for i, (key, s) in zip(live, sigs):
        if key in groups:
            groups[key].append(i)
            signs[key].append(s * signs[key][0])
        else:
            groups[key] = [i]
            signs[key] = [s]
    for key in signs:
        signs[key][0] = 1

    reps = [rows[g[0]] for g in groups.values()]
    new_delta = SignedSparseMatrix.from_rows(merged.ncols, reps)
    classes = ClassPartition(
        tuple(map(tuple, groups.values())), delta.nrows, tuple(map(tuple, signs.values()))
    )
    return RankResult(new_delta.row_supports(), classes, dropped, new_delta)


def chain_congruence(
    acc: AccumulatorComplex,
    epsilon: float = DEFAULT_EPSILON,
    engine: str = "sparse",
    self_check: bool = True,
    threads: int | None = None,
) -> QuotientComplex:
    """Weld vertices, then merge edges and faces, threading classes upward."""
    if engine not in ENGINES:
        raise ParameterError(f"unknown engine {engine!r}, expected one of {ENGINES}")
    verts, vclasses = vertex_congruence(acc.vertices, epsilon, threads=threads)
    results = merge_ranks([acc.delta0, acc.delta1], vclasses, engine, threads)
    edges, faces = results
    q = QuotientComplex(
        vertices=verts,
        ev=edges.cells,
        fe=faces.cells,
        vclasses=vclasses,
        eclasses=edges.classes,
        fclasses=faces.classes,
        delta0=edges.delta,
        delta1=faces.delta,
        dropped_edges=edges.dropped,
        dropped_faces=faces.dropped,
        engine=engine,
    )
    if self_check and engine == "sparse":
        product = matmul(q.delta1, q.delta0)
        if product.nnz:
            r, c = int(product.rows[0]), int(product.cols[0])
            raise DDNonZeroError(
                f"delta1 @ delta0 has {product.nnz} nonzeros, first at face {r + 1}, vertex {c + 1}"
            )
    return q


def merge_ranks(
    deltas: Sequence[SignedSparseMatrix], vclasses: ClassPartition, engine: str, threads: int | None = None
) -> list[RankResult]:
    """Apply cell congruence to each coboundary in turn, rank 1 upward."""
    out = []
    lower = vclasses
    for dim, delta in enumerate(deltas, start=1):
        if engine == "aa":
            res = cell_congruence_aa(delta, lower.unsigned(), dim)
        else:
            res = cell_congruence_sparse(delta, lower, dim, threads)
        out.append(res)
        lower = res.classes
    return out

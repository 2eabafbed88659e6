"""Signed integer sparse matrices and the column/row primitives the merge engines use.

Indices are 0-based in memory. Only :func:`SignedSparseMatrix.from_triples` and
:meth:`SignedSparseMatrix.triples` speak the 1-based interchange convention by
default, because that is what the file formats store.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import OrientationError, PartitionError, SparseFormatError

_INT = np.int64


class SignedSparseMatrix:
    """Immutable COO matrix over the integers, entries sorted by (col, row)."""

    __slots__ = ("nrows", "ncols", "rows", "cols", "data")

    def __init__(self, nrows: int, ncols: int, rows, cols, data, *, _trusted: bool = False):
        rows = np.asarray(rows, dtype=_INT).ravel()
        cols = np.asarray(cols, dtype=_INT).ravel()
        data = np.asarray(data, dtype=_INT).ravel()
        nrows, ncols = int(nrows), int(ncols)
        if not _trusted:
            if nrows < 0 or ncols < 0:
                raise SparseFormatError(f"negative shape ({nrows}, {ncols})")
            if not (len(rows) == len(cols) == len(data)):
                raise SparseFormatError("rows, cols and data differ in length")
            if len(rows):
                if rows.min() < 0 or rows.max() >= nrows:
                    bad = int(rows[(rows < 0) | (rows >= nrows)][0])
                    raise SparseFormatError(f"row index {bad} out of range for {nrows} rows")
                if cols.min() < 0 or cols.max() >= ncols:
                    bad = int(cols[(cols < 0) | (cols >= ncols)][0])
                    raise SparseFormatError(f"column index {bad} out of range for {ncols} columns")
                if np.any(data == 0):
                    k = int(np.flatnonzero(data == 0)[0])
                    raise SparseFormatError(f"zero coefficient stored at ({rows[k]}, {cols[k]})")
            order = np.lexsort((rows, cols))
            rows, cols, data = rows[order], cols[order], data[order]
            if len(rows) > 1:
                dup = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
                if dup.any():
                    k = int(np.flatnonzero(dup)[0])
                    raise SparseFormatError(f"duplicate coordinate ({rows[k]}, {cols[k]})")
        for a in (rows, cols, data):
            a.flags.writeable = False
        self.nrows, self.ncols = nrows, ncols
        self.rows, self.cols, self.data = rows, cols, data

    @classmethod
    def from_triples(
        cls, nrows: int, ncols: int, triples: Iterable[Sequence[int]], *, base: int = 1
    ) -> "SignedSparseMatrix":
        t = np.asarray(list(triples), dtype=_INT).reshape(-1, 3)
        for axis, name, n in ((0, "row", nrows), (1, "column", ncols)):
            bad = (t[:, axis] < base) | (t[:, axis] >= n + base)
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                raise SparseFormatError(
                    f"triple {k}: {name} index {int(t[k, axis])} out of range [{base}, {n + base - 1}]"
                )
        return cls(nrows, ncols, t[:, 0] - base, t[:, 1] - base, t[:, 2])

    @classmethod
    def from_dense(cls, a) -> "SignedSparseMatrix":
        a = np.asarray(a, dtype=_INT)
        r, c = np.nonzero(a)
        return cls(a.shape[0], a.shape[1], r, c, a[r, c])

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[tuple[Sequence[int], Sequence[int]]]):
        """Build from a list of ``(column_indices, coefficients)`` pairs, one per row."""
        r = np.repeat(np.arange(len(rows), dtype=_INT), [len(idx) for idx, _ in rows])
        c = np.fromiter((i for idx, _ in rows for i in idx), dtype=_INT, count=len(r))
        d = np.fromiter((x for _, co in rows for x in co), dtype=_INT, count=len(r))
        return cls(len(rows), ncols, r, c, d)

    @classmethod
    def _from_scipy(cls, m) -> "SignedSparseMatrix":
        m = sp.coo_matrix(m)
        keep = m.data != 0
        return cls(m.shape[0], m.shape[1], m.row[keep], m.col[keep], m.data[keep])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def nnz(self) -> int:
        return len(self.data)

    def triples(self, *, base: int = 1) -> list[tuple[int, int, int]]:
        return [
            (int(r) + base, int(c) + base, int(x))
            for r, c, x in zip(self.rows, self.cols, self.data)
        ]

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=_INT)
        out[self.rows, self.cols] = self.data
        return out

    def to_csr(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.data, (self.rows, self.cols)), shape=self.shape, dtype=_INT)

    def iter_rows(self) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(column_indices, coefficients)`` per row, columns ascending."""
        order = np.lexsort((self.cols, self.rows))
        r, c, d = self.rows[order], self.cols[order], self.data[order]
        bounds = np.searchsorted(r, np.arange(self.nrows + 1))
        for i in range(self.nrows):
            lo, hi = bounds[i], bounds[i + 1]
            yield c[lo:hi], d[lo:hi]

    def row_supports(self) -> list[tuple[int, ...]]:
        return [tuple(int(j) for j in idx) for idx, _ in self.iter_rows()]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedSparseMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and np.array_equal(self.rows, other.rows)
            and np.array_equal(self.cols, other.cols)
            and np.array_equal(self.data, other.data)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"SignedSparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def transpose(m: SignedSparseMatrix) -> SignedSparseMatrix:
    return SignedSparseMatrix(m.ncols, m.nrows, m.cols, m.rows, m.data)


def matmul(a: SignedSparseMatrix, b: SignedSparseMatrix) -> SignedSparseMatrix:
    if a.ncols != b.nrows:
        raise SparseFormatError(f"cannot multiply {a.shape} by {b.shape}")
    return SignedSparseMatrix._from_scipy(a.to_csr() @ b.to_csr())


@dataclass(frozen=True)
class ClassPartition:
    """Ordered classes of 0-based indices drawn from ``range(size)``.

    Classes need not cover the whole range: uncovered indices are cells that were
    dropped as degenerate upstream. ``signs`` gives the orientation of each member
    relative to its class seed; ``None`` means all +1.
    """

    classes: tuple[tuple[int, ...], ...]
    size: int
    signs: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        classes = tuple(tuple(int(i) for i in c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        seen = np.zeros(self.size, dtype=bool)
        for k, c in enumerate(classes):
            if not c:
                raise PartitionError(f"class {k} is empty")
            for i in c:
                if not 0 <= i < self.size:
                    raise PartitionError(f"index {i} out of range for size {self.size}")
                if seen[i]:
                    raise PartitionError(f"index {i} appears in more than one class")
                seen[i] = True
        if self.signs is not None:
            signs = tuple(tuple(int(s) for s in c) for c in self.signs)
            object.__setattr__(self, "signs", signs)
            if [len(s) for s in signs] != [len(c) for c in classes]:
                raise PartitionError("signs do not match class sizes")
            for k, s in enumerate(signs):
                if s[0] != 1 or any(x not in (-1, 1) for x in s):
                    raise PartitionError(f"class {k} has invalid signs {s}")

    @classmethod
    def unchecked(cls, classes, size: int, signs=None) -> "ClassPartition":
        """Build without validation, so a damaged class map read from disk can be reported."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "classes", tuple(tuple(int(i) for i in c) for c in classes))
        object.__setattr__(obj, "size", int(size))
        object.__setattr__(obj, "signs", None if signs is None else tuple(tuple(int(s) for s in c) for c in signs))
        return obj

    @classmethod
    def singletons(cls, n: int) -> "ClassPartition":
        return cls(tuple((i,) for i in range(n)), n)

    def __len__(self) -> int:
        return len(self.classes)

    def member_signs(self) -> tuple[tuple[int, ...], ...]:
        if self.signs is None:
            return tuple((1,) * len(c) for c in self.classes)
        return self.signs

    def lookup(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-index class number (-1 when uncovered) and member sign (0 when uncovered)."""
        cls_of = np.full(self.size, -1, dtype=_INT)
        sign_of = np.zeros(self.size, dtype=_INT)
        for k, (c, s) in enumerate(zip(self.classes, self.member_signs())):
            cls_of[list(c)] = k
            sign_of[list(c)] = s
        return cls_of, sign_of

    def covered(self) -> set[int]:
        return {i for c in self.classes for i in c}

    def is_cover(self) -> bool:
        return sum(len(c) for c in self.classes) == self.size

    def unsigned(self) -> "ClassPartition":
        return ClassPartition(self.classes, self.size)


def merge_columns(m: SignedSparseMatrix, classes: ClassPartition) -> SignedSparseMatrix:
    """Replace each class of columns by the signed sum of its members.

    Column ``k`` of the result is ``sum(sign_j * m[:, j] for j in classes[k])``.
    Columns not covered by any class are discarded. Entries that cancel to zero
    are dropped; a resulting magnitude above 1 raises :class:`OrientationError`.
    """
    if classes.size != m.ncols:
        raise PartitionError(f"partition over {classes.size} indices, matrix has {m.ncols} columns")
    cls_of, sign_of = classes.lookup()
    newcol = cls_of[m.cols]
    keep = newcol >= 0
    rows, newcol = m.rows[keep], newcol[keep]
    data = m.data[keep] * sign_of[m.cols[keep]]
    out = sp.coo_matrix((data, (rows, newcol)), shape=(m.nrows, len(classes)), dtype=_INT)
    out.sum_duplicates()
    big = np.abs(out.data) > 1
    if big.any():
        k = int(np.flatnonzero(big)[0])
        raise OrientationError(
            f"merged coefficient {int(out.data[k])} at row {int(out.row[k])}, class {int(out.col[k])}: "
            "class members are not consistently oriented"
        )
    return SignedSparseMatrix._from_scipy(out)


@dataclass(frozen=True)
class ColumnVector:
    length: int
    indices: tuple[int, ...]
    coeffs: tuple[int, ...]


def signed_column_signature(v: ColumnVector) -> tuple[ColumnVector, int]:
    """Canonical representative of ``{v, -v}`` and the sign with ``v == sign * canonical``.

    The canonical form has +1 on its smallest index.
    """
    if not v.indices:
        raise SparseFormatError("zero vector has no signed signature")
    order = sorted(range(len(v.indices)), key=v.indices.__getitem__)
    idx = tuple(v.indices[i] for i in order)
    co = tuple(v.coeffs[i] for i in order)
    if any(c == 0 for c in co):
        raise SparseFormatError("zero coefficient in column vector")
    sign = 1 if co[0] > 0 else -1
    return ColumnVector(v.length, idx, tuple(sign * c for c in co)), sign

"""Merge independently built local chain complexes into one global complex."""
from .congruence import (
    AccumulatorComplex,
    QuotientComplex,
    cell_congruence_aa,
    cell_congruence_sparse,
    chain_congruence,
)
from .sparse import (
    ClassPartition,
    ColumnVector,
    SignedSparseMatrix,
    matmul,
    merge_columns,
    signed_column_signature,
    transpose,
)
from .validation import check_dd_zero, check_partitions, euler_characteristic, validate_quotient
from .vertex import DEFAULT_EPSILON, SpatialIndex, vertex_congruence

__all__ = [
    "AccumulatorComplex",
    "ClassPartition",
    "ColumnVector",
    "DEFAULT_EPSILON",
    "QuotientComplex",
    "SignedSparseMatrix",
    "SpatialIndex",
    "cell_congruence_aa",
    "cell_congruence_sparse",
    "chain_congruence",
    "check_dd_zero",
    "check_partitions",
    "euler_characteristic",
    "matmul",
    "merge_columns",
    "signed_column_signature",
    "transpose",
    "validate_quotient",
    "vertex_congruence",
]

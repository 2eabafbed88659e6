"""Exception hierarchy. Every error carries a short machine-readable ``code``."""


class MergeError(Exception):
    code = "ERROR"
    exit_status = 3


class SparseFormatError(MergeError, ValueError):
    """Malformed triples or incompatible matrix shapes."""

    code = "SPARSE_FORMAT"
    exit_status = 2


class PartitionError(MergeError, ValueError):
    """A class map overlaps itself or refers to indices out of range."""

    code = "BAD_PARTITION"
    exit_status = 3


class OrientationError(MergeError):
    """Sign-aligned merge produced a coefficient of magnitude > 1."""

    code = "ORIENTATION_INCONSISTENT"
    exit_status = 1


class DDNonZeroError(MergeError):
    code = "DD_NONZERO"
    exit_status = 1


class SchemaError(MergeError, ValueError):
    """Input file does not match its JSON schema or violates a load-time invariant."""

    code = "SCHEMA"
    exit_status = 2


class ParameterError(MergeError, ValueError):
    code = "BAD_PARAMETER"
    exit_status = 2

"""Error hierarchy.

Every error carries the process exit status the CLI reports for it:
1 for unreadable or malformed files, 2 for invalid input or configuration,
3 for numerical failures.
"""

from typing import Optional


class SparsenseError(Exception):
    """Base class for all sparsense errors."""

    exit_code: int = 3
    code: str = "SPARSENSE_ERROR"

    @property
    def label(self) -> str:
        return type(self).__name__


# ==================== Input / configuration (exit 2) ====================

class InputError(SparsenseError):
    exit_code = 2
    code = "INVALID_INPUT"


class ConfigError(InputError):
    code = "INVALID_CONFIG"


class UnknownCommand(InputError):
    code = "UNKNOWN_COMMAND"


class DimensionMismatch(InputError):
    code = "DIMENSION_MISMATCH"


class NonFiniteInput(InputError):
    code = "NON_FINITE_INPUT"


class RankOutOfRange(InputError):
    code = "RANK_OUT_OF_RANGE"


class InfeasibleSensorCount(InputError):
    code = "INFEASIBLE_SENSOR_COUNT"


class InfeasibleRankSpec(InputError):
    code = "INFEASIBLE_RANK_SPEC"


class NonMonotoneInput(InputError):
    code = "NON_MONOTONE_INPUT"


class TruncatedSpectrum(InputError):
    code = "TRUNCATED_SPECTRUM"


class CombinatorialLimitExceeded(InputError):
    code = "COMBINATORIAL_LIMIT"


class OversampleLimitExceeded(InputError):
    code = "OVERSAMPLE_LIMIT"


class UnsupportedBasis(InputError):
    code = "UNSUPPORTED_BASIS"


# ==================== Files (exit 1) ====================

class StorageError(SparsenseError):
    exit_code = 1
    code = "STORAGE_ERROR"


class MalformedHeader(StorageError):
    code = "MALFORMED_HEADER"


class NonFiniteValue(StorageError):
    code = "NON_FINITE_VALUE"

    def __init__(self, row: int, col: int, value: float, source: Optional[str] = None):
        where = f" in {source}" if source else ""
        super().__init__(f"non-finite value {value!r} at row {row}, column {col}{where}")
        self.row = row
        self.col = col
        self.value = value


class EmptyMatrix(StorageError):
    code = "EMPTY_MATRIX"


class DuplicateIndex(StorageError):
    code = "DUPLICATE_INDEX"


class IndexOutOfRange(StorageError):
    code = "INDEX_OUT_OF_RANGE"


class SchemaViolation(StorageError):
    code = "SCHEMA_VIOLATION"


# ==================== Numerical (exit 3) ====================

class NumericalError(SparsenseError):
    exit_code = 3
    code = "NUMERICAL_FAILURE"


class DegenerateAfterCentering(NumericalError):
    code = "DEGENERATE_AFTER_CENTERING"


class DegenerateBasis(NumericalError):
    code = "DEGENERATE_BASIS"


class DegenerateInterpolant(NumericalError):
    code = "DEGENERATE_INTERPOLANT"

    def __init__(self, step: int, message: Optional[str] = None):
        super().__init__(message or f"interpolation system is singular at step {step}")
        self.step = step


class SingularInterpolant(NumericalError):
    code = "SINGULAR_INTERPOLANT"


class ZeroColumn(NumericalError):
    code = "ZERO_COLUMN"


class ZeroMatrix(NumericalError):
    code = "ZERO_MATRIX"

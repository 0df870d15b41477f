"""Exception types shared across the package.

Two families: :class:`ToolError` covers failures of the computations
themselves (the CLI maps these to exit code 2), :class:`MatrixFileError`
covers unreadable or malformed input files (exit code 1).
"""


class ToolError(Exception):
    """Base class for computation-level failures."""


class InvalidMatrix(ToolError):
    """Matrix input is malformed (wrong shape, empty, or non-finite entries)."""


class RankDeficient(ToolError):
    """The measurement matrix does not have full row rank."""


class NotUnderdetermined(ToolError):
    """The matrix has at least as many rows as columns (m >= n)."""


class NumericalBreakdown(ToolError):
    """A numerical routine lost too much accuracy to continue safely."""


class FaceInfeasible(ToolError):
    """A face of the unit-linf cross-section is empty (zero basis row)."""

    def __init__(self, face_index: int):
        super().__init__(f"face {face_index} is infeasible")
        self.face_index = face_index


class AllFacesInfeasible(ToolError):
    """No face admits a feasible point; impossible for a valid basis."""


class ZeroColumn(ToolError):
    """A column of all zeros cannot be normalized."""

    def __init__(self, column_index: int):
        super().__init__(f"column {column_index} is identically zero")
        self.column_index = column_index


class NotADictionary(ToolError):
    """Columns are not unit vectors within tolerance."""


class NonpositiveCoherence(ToolError):
    """Coherence must be positive for the coherence sparsity bound."""


class TooLarge(ToolError):
    """An enumeration guard was exceeded; the request is refused loudly."""


class WitnessUnavailable(ToolError):
    """No balancedness-violating witness exists for the given partition."""


class NotInRange(ToolError):
    """The measurement vector is not in the range of the matrix."""


class BadDimensions(ToolError):
    """Generator dimensions are invalid (requires m < n)."""


class NotPowerOfTwo(ToolError):
    """The identity+Hadamard construction needs m to be a power of two."""


class OrderingViolation(ToolError):
    """Certificate ordering (k2 <= k1 <= k_star) failed; internal bug."""


class MatrixFileError(Exception):
    """Base class for input-file failures."""


class ParseError(MatrixFileError):
    """A matrix file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, offset: int | None = None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", offset {offset}" if offset is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.offset = offset


class DimensionMismatch(MatrixFileError):
    """Declared dimensions do not match the data length."""

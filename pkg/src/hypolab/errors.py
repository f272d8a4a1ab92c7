"""Domain errors shared across the package.

Every error carries a stable ``code`` so the service layer and the CLI can
report machine-readable failure names.
"""


class HypolabError(Exception):
    """Base class for all domain errors."""

    code = "ERROR"


class NonHermitianError(HypolabError):
    code = "NON_HERMITIAN"


class UnbalancedSymbolError(HypolabError):
    code = "UNBALANCED"


class ShapeMismatchError(HypolabError):
    code = "SHAPE_MISMATCH"


class UnsupportedCaseError(HypolabError):
    code = "UNSUPPORTED"


class PreconditionError(HypolabError):
    code = "PRECONDITION"


class EigenSolverError(HypolabError):
    code = "EIGEN_FAILURE"


class InputFormatError(HypolabError):
    code = "BAD_INPUT"

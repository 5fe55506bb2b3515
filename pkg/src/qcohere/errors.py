"""Exception types raised by qcohere.

All exceptions derive from :class:`QcohereError`, which itself derives
from :class:`ValueError` so that callers treating bad inputs generically
can catch a single builtin type.
"""


class QcohereError(ValueError):
    """Base class for all qcohere errors."""


class StateValidationError(QcohereError):
    """A density matrix failed one of its defining invariants."""


# Alias kept for API symmetry with operations that reject bad states.
InvalidStateError = StateValidationError


class NonSquareError(StateValidationError):
    """Matrix entries do not form a square matrix."""


class NonHermitianError(StateValidationError):
    """Matrix is not Hermitian within tolerance."""


class TraceNotOneError(StateValidationError):
    """Matrix trace differs from one beyond tolerance."""


class NotPositiveSemidefiniteError(StateValidationError):
    """Matrix has an eigenvalue below the allowed negative tolerance."""


class NonUnitaryError(QcohereError):
    """Basis columns are not orthonormal within tolerance."""


class DimensionMismatchError(QcohereError):
    """Operands act on spaces of different dimensions."""


class InvalidRankError(QcohereError):
    """Requested rank is outside 1..dim."""


class IndexOutOfRangeError(QcohereError):
    """Level index outside 0..dim-1."""


class EqualIndicesError(QcohereError):
    """Two level indices that must differ are equal."""


class ZeroGammaDenominatorError(QcohereError):
    """gamma_y or gamma_z is zero, so the gamma ratio does not exist."""


class TauOutOfRangeError(QcohereError):
    """Coherence-function lag tau outside -(dim-1)..dim-1."""


class EtaMissingError(QcohereError):
    """POVM has no validated idempotency factor eta."""


class DegenerateDistributionError(QcohereError):
    """Phase distribution with vanishing second moment."""

"""qcohere: coherence, nonclassicality and metrological resolution.

Numerical toolkit for finite-dimensional quantum states: coherence
terms and the Hilbert-Schmidt measure, a constructive negativity
witness for nonclassicality, exact phase-POVM statistics with their
Renyi-integral identity, and resolution measures (Wiener-Kintchine
variance, statistical and density-matrix distances, the variance-based
signal/noise bound).

Hot phase-evaluation loops run on a compiled Cython kernel when the
extension is available and on a numpy fallback otherwise; see
``qcohere.kernel_backend()``.
"""

from ._kernels import BACKEND as _KERNEL_BACKEND
from ._kernels import available_backends
from .coherence import (
    CoherenceProfile,
    CoherentBasis,
    coherence_profile,
    commutator_norm,
    find_coherent_basis,
    hilbert_schmidt_coherence,
)
from .errors import (
    DegenerateDistributionError,
    DimensionMismatchError,
    EqualIndicesError,
    EtaMissingError,
    IndexOutOfRangeError,
    InvalidRankError,
    InvalidStateError,
    NonHermitianError,
    NonSquareError,
    NonUnitaryError,
    NotPositiveSemidefiniteError,
    QcohereError,
    StateValidationError,
    TauOutOfRangeError,
    TraceNotOneError,
    ZeroGammaDenominatorError,
)
from .metrology import (
    BoundReport,
    Povm,
    ResolutionReport,
    density_matrix_distance,
    outcome_probabilities,
    small_signal_quadratic,
    statistical_distance,
    statistics_derivative,
    uncertainty_bound_check,
    wiener_kintchine_resolution,
)
from .nonclassicality import (
    ClassicalVerdict,
    GammaTriple,
    JointDistribution,
    NegativityCertificate,
    PauliSubspace,
    WitnessCertificate,
    joint_distribution,
    pauli_subspace,
    witness_search,
)
from .phase import (
    McPhaseStats,
    MultiPhaseDistribution,
    SinglePhaseDistribution,
    covariance_check,
    mc_phase_statistics,
    moment,
    multi_phase_distribution,
    phase_state_vector,
    renyi_integral,
    single_phase_distribution,
    susskind_glogower_moment,
    susskind_glogower_operator,
)
from .qcore import (
    BasisObservable,
    DensityMatrix,
    Tolerances,
    UnitarySignal,
    ValidationReport,
    evolve,
    load_observable,
    load_state,
    observable_from_dict,
    observable_to_dict,
    random_basis,
    random_state,
    save_observable,
    save_state,
    state_from_dict,
    state_to_dict,
    validate_state,
)

__version__ = "0.1.0"


def kernel_backend() -> str:
    """Name of the active kernel backend ("cython" or "numpy")."""
    return _KERNEL_BACKEND


__all__ = [
    "__version__",
    "kernel_backend",
    "available_backends",
    # qcore
    "Tolerances",
    "ValidationReport",
    "validate_state",
    "DensityMatrix",
    "BasisObservable",
    "UnitarySignal",
    "evolve",
    "random_state",
    "random_basis",
    "state_to_dict",
    "state_from_dict",
    "observable_to_dict",
    "observable_from_dict",
    "load_state",
    "save_state",
    "load_observable",
    "save_observable",
    # coherence
    "CoherenceProfile",
    "coherence_profile",
    "hilbert_schmidt_coherence",
    "CoherentBasis",
    "find_coherent_basis",
    "commutator_norm",
    # nonclassicality
    "PauliSubspace",
    "GammaTriple",
    "JointDistribution",
    "NegativityCertificate",
    "ClassicalVerdict",
    "WitnessCertificate",
    "pauli_subspace",
    "joint_distribution",
    "witness_search",
    # phase
    "MultiPhaseDistribution",
    "SinglePhaseDistribution",
    "multi_phase_distribution",
    "moment",
    "renyi_integral",
    "covariance_check",
    "single_phase_distribution",
    "susskind_glogower_operator",
    "susskind_glogower_moment",
    "phase_state_vector",
    "McPhaseStats",
    "mc_phase_statistics",
    # metrology
    "Povm",
    "ResolutionReport",
    "BoundReport",
    "wiener_kintchine_resolution",
    "outcome_probabilities",
    "statistical_distance",
    "statistics_derivative",
    "small_signal_quadratic",
    "uncertainty_bound_check",
    "density_matrix_distance",
    # errors
    "QcohereError",
    "StateValidationError",
    "InvalidStateError",
    "NonSquareError",
    "NonHermitianError",
    "TraceNotOneError",
    "NotPositiveSemidefiniteError",
    "NonUnitaryError",
    "DimensionMismatchError",
    "InvalidRankError",
    "IndexOutOfRangeError",
    "EqualIndicesError",
    "ZeroGammaDenominatorError",
    "TauOutOfRangeError",
    "EtaMissingError",
    "DegenerateDistributionError",
]

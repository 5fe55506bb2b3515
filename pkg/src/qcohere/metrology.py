"""Metrological resolution measures driven by coherence.

Three complementary quantifications of how well a signal imprinted by
U(lambda) = exp(-i lambda g) can be resolved:

* the Wiener-Kintchine variance, inversely proportional to the
  integral of the squared single-phase distribution (equivalently to
  the area under the squared mutual coherence function);
* the Hilbert-Schmidt statistical distance between the outcome
  probabilities of a POVM before and after the signal, with its exact
  small-signal quadratic coefficient and the variance-based upper
  bound on the signal/noise ratio;
* the intrinsic density-matrix distance, whose quadratic coefficient
  is the eigenvalue-gap-weighted sum of squared coherence moduli.

All derivative-level quantities depend on the coherence terms only,
never on the diagonal statistics.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDistributionError,
    DimensionMismatchError,
    EtaMissingError,
    NotPositiveSemidefiniteError,
)
from .phase import SinglePhaseDistribution
from .qcore import BasisObservable, DensityMatrix, UnitarySignal, evolve

__all__ = [
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
]

_COMPLETENESS_TOL = 1e-9
_ETA_TOL = 1e-9
_PSD_TOL = 1e-8
_DENOMINATOR_TOL = 1e-12
_FLAT_TOL = 1e-12


class Povm:
    """A finite positive operator-valued measure with optional eta factor.

    The outcomes must be positive semidefinite and sum to the identity.
    ``eta`` is the idempotency factor of the assumption
    Delta(mu)^2 = eta Delta(mu); it is 1 for rank-1 orthogonal
    projectors, derived automatically for uniformly scaled projector
    POVMs, and left unset when no single factor fits, in which case the
    variance bound is reported as not applicable.
    """

    __slots__ = ("_outcomes", "_dim", "_eta")

    def __init__(self, outcomes, eta: float | None = None):
        mats = [np.array(m, dtype=complex) for m in outcomes]
        if not mats:
            raise DimensionMismatchError("a POVM needs at least one outcome")
        dim = mats[0].shape[0]
        for m in mats:
            if m.shape != (dim, dim):
                raise DimensionMismatchError("POVM outcomes must share one square shape")
            if np.max(np.abs(m - m.conj().T)) > _ETA_TOL:
                raise NotPositiveSemidefiniteError("POVM outcome is not Hermitian")
            min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
            if min_eig < -_PSD_TOL:
                raise NotPositiveSemidefiniteError(
                    f"POVM outcome has minimum eigenvalue {min_eig:.3e}"
                )
        total = sum(mats)
        deviation = float(np.max(np.abs(total - np.eye(dim))))
        if deviation > _COMPLETENESS_TOL:
            raise DimensionMismatchError(
                f"POVM outcomes do not sum to identity: max deviation {deviation:.3e}"
            )
        if eta is not None:
            eta = float(eta)
            worst = max(float(np.linalg.norm(m @ m - eta * m)) for m in mats)
            if worst > _ETA_TOL:
                raise EtaMissingError(
                    f"Delta^2 = eta Delta fails at eta={eta!r}: residual {worst:.3e}"
                )
        else:
            eta = _derive_eta(mats)
        for m in mats:
            m.setflags(write=False)
        self._outcomes = tuple(mats)
        self._dim = dim
        self._eta = eta

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def outcomes(self) -> tuple[np.ndarray, ...]:
        return self._outcomes

    @property
    def eta(self) -> float | None:
        return self._eta

    @classmethod
    def projective(cls, basis: BasisObservable) -> "Povm":
        """Rank-1 projectors onto the basis columns; eta is exactly 1."""
        b = basis.basis
        outcomes = [np.outer(b[:, mu], b[:, mu].conj()) for mu in range(basis.dim)]
        return cls(outcomes, eta=1.0)

    def __len__(self) -> int:
        return len(self._outcomes)

    def __repr__(self) -> str:
        return f"Povm(dim={self._dim}, outcomes={len(self._outcomes)}, eta={self._eta!r})"


def _derive_eta(mats) -> float | None:
    candidates = []
    for m in mats:
        trace = float(np.trace(m).real)
        if trace > _ETA_TOL:
            candidates.append(float(np.trace(m @ m).real) / trace)
    if not candidates:
        return None
    eta = candidates[0]
    if max(abs(c - eta) for c in candidates) > _ETA_TOL:
        return None
    worst = max(float(np.linalg.norm(m @ m - eta * m)) for m in mats)
    return eta if worst <= _ETA_TOL else None


@dataclass(frozen=True)
class ResolutionReport:
    """Wiener-Kintchine resolution of a single-phase distribution.

    ``integral_P2`` is the integral of P^2 over one period and
    ``coherence_time_interpretation`` its equivalent reading as
    2 pi sum_tau |Gamma(tau)|^2, the area under the squared coherence
    function; the two coincide by Parseval.  ``flat`` marks
    distributions with no lag content beyond Gamma(0), for which the
    formula still returns the finite value sqrt(pi) although the state
    carries no signal information.
    """

    delta2_lambda: float
    integral_P2: float
    coherence_time_interpretation: float
    flat: bool

    def __post_init__(self):
        residual = abs(self.delta2_lambda * 2.0 * np.sqrt(np.pi) * self.integral_P2 - 1.0)
        if residual > 1e-12:
            raise DegenerateDistributionError(
                f"resolution report violates its defining identity by {residual:.3e}"
            )


def wiener_kintchine_resolution(dist: SinglePhaseDistribution) -> ResolutionReport:
    """Signal variance Delta^2 lambda = 1 / (2 sqrt(pi) int dphi P^2).

    More coherence (larger lag content of Gamma) means a larger
    integral and hence better resolution.
    """
    integral = dist.integral_p_squared()
    if integral <= 0.0:
        raise DegenerateDistributionError("int dphi P^2 must be positive")
    center = dist.dim - 1
    off_center = np.delete(dist.gammas, center)
    flat = off_center.size == 0 or float(np.max(np.abs(off_center))) <= _FLAT_TOL
    return ResolutionReport(
        delta2_lambda=1.0 / (2.0 * np.sqrt(np.pi) * integral),
        integral_P2=integral,
        coherence_time_interpretation=integral,
        flat=flat,
    )


def _check_dims(rho: DensityMatrix, other_dim: int) -> None:
    if rho.dim != other_dim:
        raise DimensionMismatchError(
            f"state dimension {rho.dim} does not match operand dimension {other_dim}"
        )


def outcome_probabilities(rho: DensityMatrix, povm: Povm) -> np.ndarray:
    """p_mu = tr(Delta(mu) rho) for every outcome."""
    _check_dims(rho, povm.dim)
    return np.array([np.trace(m @ rho.matrix).real for m in povm.outcomes])


def statistical_distance(rho: DensityMatrix, signal: UnitarySignal, povm: Povm) -> float:
    """Exact finite-signal Hilbert-Schmidt distance between statistics,

    sum_mu [p_mu(lambda) - p_mu(0)]^2 with p_mu(lambda) the POVM
    statistics of the evolved state.
    """
    _check_dims(rho, povm.dim)
    _check_dims(rho, signal.dim)
    p0 = outcome_probabilities(rho, povm)
    p1 = outcome_probabilities(evolve(rho, signal), povm)
    return float(np.sum((p1 - p0) ** 2))


def statistics_derivative(rho: DensityMatrix, generator: BasisObservable,
                          povm: Povm) -> np.ndarray:
    """d p_mu / d lambda at lambda = 0 through the coherence formula,

    p'_mu = i sum_{j != k} (g_k - g_j) <j|rho|k> <k|Delta(mu)|j>.

    Depends on the coherence terms only; the derivatives sum to zero
    by probability conservation.
    """
    _check_dims(rho, povm.dim)
    _check_dims(rho, generator.dim)
    m = rho.in_basis(generator)
    g = generator.eigenvalues
    gaps = g[np.newaxis, :] - g[:, np.newaxis]  # (g_k - g_j) at [j, k]
    b = generator.basis
    derivatives = []
    for delta in povm.outcomes:
        d = b.conj().T @ delta @ b
        derivatives.append((1j * np.sum(gaps * m * d.T)).real)
    return np.array(derivatives)


def small_signal_quadratic(rho: DensityMatrix, generator: BasisObservable,
                           povm: Povm) -> float:
    """Quadratic coefficient sum_mu p'_mu^2 of the statistical distance."""
    p_prime = statistics_derivative(rho, generator, povm)
    return float(np.sum(p_prime ** 2))


@dataclass(frozen=True)
class BoundReport:
    """Outcome of the variance-based signal/noise bound check.

    ``lhs`` is 4 Delta^2 g (four times the generator variance, the
    quantum Fisher information of a unitary signal); ``rhs`` is
    sum_mu p'_mu^2 / (eta - sum_mu p_mu^2).  When the denominator is
    not safely positive the bound is not applicable and ``rhs`` and
    ``satisfied`` are None.
    """

    lhs: float
    rhs: float | None
    satisfied: bool | None
    applicable: bool


def uncertainty_bound_check(rho: DensityMatrix, generator: BasisObservable,
                            povm: Povm) -> BoundReport:
    """Check 4 Delta^2 g >= sum_mu p'_mu^2 / (eta - sum_mu p_mu^2).

    Requires a POVM with a validated eta factor.  Deterministic
    statistics make the denominator vanish; that case is reported, not
    raised.
    """
    if povm.eta is None:
        raise EtaMissingError("the variance bound needs a POVM with a validated eta")
    _check_dims(rho, povm.dim)
    _check_dims(rho, generator.dim)
    g = generator.observable_matrix()
    mean = np.trace(rho.matrix @ g).real
    mean_square = np.trace(rho.matrix @ g @ g).real
    lhs = float(4.0 * (mean_square - mean ** 2))
    probabilities = outcome_probabilities(rho, povm)
    denominator = povm.eta - float(np.sum(probabilities ** 2))
    if denominator <= _DENOMINATOR_TOL:
        return BoundReport(lhs=lhs, rhs=None, satisfied=None, applicable=False)
    rhs = small_signal_quadratic(rho, generator, povm) / denominator
    return BoundReport(lhs=lhs, rhs=rhs, satisfied=bool(lhs >= rhs - 1e-10), applicable=True)


def density_matrix_distance(rho: DensityMatrix,
                            signal: UnitarySignal) -> tuple[float, float]:
    """Intrinsic distance tr[(rho(lambda) - rho)^2] and its quadratic law.

    Returns the exact distance at the signal value together with the
    small-signal coefficient sum_{j != k} (g_k - g_j)^2 |<j|rho|k>|^2.
    The coefficient is also evaluated as -tr([rho, g]^2); the two
    routes must agree to 1e-10 and a disagreement raises, since it
    would mean a broken invariant rather than a user error.
    """
    _check_dims(rho, signal.dim)
    evolved = evolve(rho, signal)
    difference = evolved.matrix - rho.matrix
    exact = float(np.trace(difference @ difference).real)
    m = rho.in_basis(signal.generator)
    g = signal.generator.eigenvalues
    gaps = g[np.newaxis, :] - g[:, np.newaxis]
    coefficient = float(np.sum((gaps ** 2) * np.abs(m) ** 2))
    g_matrix = signal.generator.observable_matrix()
    commutator = rho.matrix @ g_matrix - g_matrix @ rho.matrix
    commutator_route = float(-np.trace(commutator @ commutator).real)
    if abs(coefficient - commutator_route) > 1e-10 * max(1.0, abs(coefficient)):
        raise DegenerateDistributionError(
            "coherence-sum and commutator routes disagree: "
            f"{coefficient!r} vs {commutator_route!r}"
        )
    return exact, coefficient

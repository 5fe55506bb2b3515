"""Phase-space view of coherence: the multi-phase observable and its marginals.

The unnormalized, nonorthogonal phase states |phi_vec> = sum_j
exp(i phi_j) |j> built on a basis define a POVM whose statistics

    P(phi_vec) = 1 + sum_{j != k} exp(i (phi_k - phi_j)) <j|rho|k>

depend on the coherence terms only.  Constraining the phases to a
common ramp phi_j proportional to the level index collapses this to the
single-phase distribution P(phi) with Fourier coefficients Gamma(tau),
the mutual coherence function, also reachable as expectations of powers
of the finite lowering operator E = sum_j |j><j+1|.

Measure conventions follow the defining formulas exactly and therefore
differ between the two distributions: the multi-phase distribution
integrates to 1 against the normalized measure prod_j dphi_j/(2 pi)^N,
while the single-phase distribution carries its 1/(2 pi) inside and
integrates to 1 against plain dphi over [0, 2 pi).

Every integral with a closed form is evaluated analytically from the
Fourier coefficients; the seeded Monte Carlo quadrature over the
N-torus exists as an independent cross-check oracle.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import phase_batch, single_phase_batch
from .errors import (
    DegenerateDistributionError,
    EqualIndicesError,
    IndexOutOfRangeError,
    TauOutOfRangeError,
)
from .coherence import coherence_profile
from .qcore import BasisObservable, DensityMatrix, UnitarySignal, evolve

__all__ = [
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
]

TWO_PI = 2.0 * np.pi

_MC_CHUNK = 1 << 16


def phase_state_vector(phases, basis: BasisObservable | None = None) -> np.ndarray:
    """The phase state sum_j exp(i phi_j) |j> as a coordinate vector.

    With a basis the kets |j> are its columns; otherwise computational.
    The state is intentionally unnormalized (norm sqrt(N)), and every
    overlap <j|phase state> has unit modulus, which is the
    complementarity between the phase observable and the basis.
    """
    phases = np.asarray(phases, dtype=float).reshape(-1)
    v = np.exp(1j * phases)
    if basis is None:
        return v
    if basis.dim != phases.shape[0]:
        raise IndexOutOfRangeError(
            f"{phases.shape[0]} phases given for dimension {basis.dim}"
        )
    return basis.basis @ v


class MultiPhaseDistribution:
    """Exact trigonometric-polynomial form of the multi-phase statistics.

    Stores the constant term 1 plus one complex coefficient per ordered
    level pair; evaluation at any phase vector is exact (no sampling or
    discretization enters the analytic path).
    """

    __slots__ = ("dim", "coeffs", "constant", "_kernel_matrix")

    def __init__(self, dim: int, coeffs: dict[tuple[int, int], complex]):
        self.dim = dim
        self.coeffs = dict(coeffs)
        self.constant = 1.0
        # Uniform diagonal 1/N reproduces the constant term under the
        # quadratic-form kernel since sum_j |exp(i phi_j)|^2 / N = 1.
        m = np.eye(dim, dtype=complex) / dim
        for (j, k), value in self.coeffs.items():
            m[j, k] = value
        self._kernel_matrix = m

    def evaluate(self, phases) -> float | np.ndarray:
        """P at one phase vector (returns float) or a batch S x N (array)."""
        arr = np.asarray(phases, dtype=float)
        single = arr.ndim == 1
        values = phase_batch(self._kernel_matrix, np.atleast_2d(arr))
        return float(values[0]) if single else values

    def moment(self, j: int, k: int) -> complex:
        if j == k:
            raise EqualIndicesError("moments are defined for distinct levels")
        if not (0 <= j < self.dim and 0 <= k < self.dim):
            raise IndexOutOfRangeError(f"indices ({j}, {k}) out of range")
        return self.coeffs[(j, k)]


def multi_phase_distribution(rho: DensityMatrix,
                             observable: BasisObservable) -> MultiPhaseDistribution:
    """Multi-phase statistics of a state relative to a basis.

    The coefficient map is exactly the coherence profile; the diagonal
    statistics never enter.
    """
    profile = coherence_profile(rho, observable)
    return MultiPhaseDistribution(dim=profile.dim, coeffs=profile.pairs)


def moment(dist: MultiPhaseDistribution, j: int, k: int) -> complex:
    """Fourier coefficient int dphi_vec exp(i (phi_j - phi_k)) P(phi_vec).

    Equals <j|rho|k> exactly: under the normalized torus measure only
    the matching exponential survives.
    """
    return dist.moment(j, k)


def renyi_integral(dist: MultiPhaseDistribution) -> float:
    """int dphi_vec P^2 over the normalized torus measure, in closed form.

    Expanding P^2 in double level sums, the torus integral kills every
    exponential except the diagonal pairing (which sums to 1) and the
    exchange pairing (which sums the squared coherence moduli), so the
    result is 1 + sum_{j != k} |<j|rho|k>|^2.
    """
    return 1.0 + float(sum(abs(v) ** 2 for v in dist.coeffs.values()))


def covariance_check(rho: DensityMatrix, observable: BasisObservable, j: int,
                     lam: float, phase_point) -> tuple[float, float]:
    """Both routes of the phase-shift covariance property.

    Returns (P of the shifted state at the phase point, P of the
    original state with phi_j advanced by lambda).  The generator of
    the shift is the single projector |j><j| in the observable's basis,
    so the two numbers agree to rounding error.
    """
    if not 0 <= j < rho.dim:
        raise IndexOutOfRangeError(f"level {j} out of range for dimension {rho.dim}")
    point = np.asarray(phase_point, dtype=float).reshape(-1)
    projector_eigenvalues = np.zeros(rho.dim)
    projector_eigenvalues[j] = 1.0
    generator = BasisObservable(observable.basis, projector_eigenvalues)
    shifted_state = evolve(rho, UnitarySignal(generator, lam))
    value_state_route = multi_phase_distribution(shifted_state, observable).evaluate(point)
    shifted_point = point.copy()
    shifted_point[j] += lam
    value_argument_route = multi_phase_distribution(rho, observable).evaluate(shifted_point)
    return float(value_state_route), float(value_argument_route)


class SinglePhaseDistribution:
    """P(phi) as the Fourier series of the mutual coherence function.

    ``gammas`` stores Gamma(tau) for tau = -(N-1) .. N-1 at index
    tau + N - 1.  Lags at |tau| = N would vanish identically under the
    index-range convention and are not stored.  Gamma(0) = 1/(2 pi) and
    Gamma(-tau) = conj(Gamma(tau)), so P is real, integrates to 1 over
    [0, 2 pi), and is nonnegative (it is <phi|rho|phi>/(2 pi)).
    """

    __slots__ = ("dim", "gammas")

    def __init__(self, dim: int, gammas):
        gammas = np.asarray(gammas, dtype=complex)
        if gammas.shape != (2 * dim - 1,):
            raise TauOutOfRangeError(
                f"expected {2 * dim - 1} lag coefficients for dimension {dim}"
            )
        center = dim - 1
        if abs(gammas[center] - 1.0 / TWO_PI) > 1e-12:
            raise DegenerateDistributionError(
                "Gamma(0) must equal 1/(2 pi) for a unit-trace state"
            )
        if np.max(np.abs(gammas[::-1].conj() - gammas)) > 1e-12:
            raise DegenerateDistributionError("Gamma(-tau) must equal conj(Gamma(tau))")
        self.dim = dim
        self.gammas = gammas

    def gamma(self, tau: int) -> complex:
        """Mutual coherence function at integer lag tau."""
        if abs(tau) > self.dim - 1:
            raise TauOutOfRangeError(f"|tau| must be at most {self.dim - 1}, got {tau}")
        return complex(self.gammas[tau + self.dim - 1])

    def evaluate(self, phi) -> float | np.ndarray:
        arr = np.asarray(phi, dtype=float)
        single = arr.ndim == 0
        values = single_phase_batch(self.gammas, np.atleast_1d(arr))
        return float(values[0]) if single else values

    def integral_p_squared(self) -> float:
        """int dphi P^2 over [0, 2 pi) = 2 pi sum_tau |Gamma(tau)|^2."""
        return TWO_PI * float(np.sum(np.abs(self.gammas) ** 2))

    def grid_integral_p_squared(self, n_grid: int = 4096) -> float:
        """Rectangle-rule quadrature oracle for int dphi P^2.

        Exact to rounding for the trigonometric polynomials produced at
        this package's dimensions (degree of P^2 is at most 2N - 2, far
        below the default grid).
        """
        phis = np.arange(n_grid) * (TWO_PI / n_grid)
        values = self.evaluate(phis)
        return float(np.sum(values ** 2) * (TWO_PI / n_grid))

    def min_on_grid(self, n_grid: int = 4096) -> float:
        phis = np.arange(n_grid) * (TWO_PI / n_grid)
        return float(np.min(self.evaluate(phis)))


def single_phase_distribution(rho: DensityMatrix,
                              observable: BasisObservable) -> SinglePhaseDistribution:
    """Phase-ramp marginal of the multi-phase statistics.

    Gamma(tau) = (1/(2 pi)) sum_j <j+tau|rho|j>, with kets outside the
    level range dropped from the sum.
    """
    m = rho.in_basis(observable)
    n = rho.dim
    gammas = np.empty(2 * n - 1, dtype=complex)
    for tau in range(-(n - 1), n):
        gammas[tau + n - 1] = np.trace(m, offset=-tau) / TWO_PI
    return SinglePhaseDistribution(dim=n, gammas=gammas)


def susskind_glogower_operator(dim: int) -> np.ndarray:
    """The finite lowering-style operator E = sum_j |j><j+1|."""
    return np.eye(dim, k=1, dtype=complex)


def susskind_glogower_moment(rho: DensityMatrix, observable: BasisObservable,
                             tau: int) -> complex:
    """Gamma(tau) through the operator route tr(rho E^tau) / (2 pi).

    E^tau with negative tau means the adjoint raised to |tau|.  Must
    agree with the direct lag sum of ``single_phase_distribution``.
    """
    n = rho.dim
    if abs(tau) > n - 1:
        raise TauOutOfRangeError(f"|tau| must be at most {n - 1}, got {tau}")
    e = susskind_glogower_operator(n)
    power = np.linalg.matrix_power(e if tau >= 0 else e.conj().T, abs(tau))
    m = rho.in_basis(observable)
    return complex(np.trace(m @ power) / TWO_PI)


@dataclass(frozen=True)
class McPhaseStats:
    """Monte Carlo torus averages of P, P^2 and selected moments."""

    n_samples: int
    mean: float
    mean_square: float
    moments: dict[tuple[int, int], complex]


def _mc_worker(dist: MultiPhaseDistribution, n_samples: int, seed_seq,
               pairs: tuple[tuple[int, int], ...]):
    rng = np.random.default_rng(seed_seq)
    matrix = dist._kernel_matrix
    sum_p = 0.0
    sum_p2 = 0.0
    sum_moments = {pair: 0.0 + 0.0j for pair in pairs}
    remaining = n_samples
    while remaining > 0:
        chunk = min(_MC_CHUNK, remaining)
        phases = rng.uniform(0.0, TWO_PI, size=(chunk, dist.dim))
        values = phase_batch(matrix, phases)
        sum_p += float(values.sum())
        sum_p2 += float((values * values).sum())
        for (j, k) in pairs:
            weights = np.exp(1j * (phases[:, j] - phases[:, k]))
            sum_moments[(j, k)] += complex(np.sum(weights * values))
        remaining -= chunk
    return sum_p, sum_p2, sum_moments


def mc_phase_statistics(dist: MultiPhaseDistribution, n_samples: int, seed,
                        workers: int = 1, pairs=()) -> McPhaseStats:
    """Seeded Monte Carlo quadrature over the N-torus.

    Estimates the normalized-measure integrals of P, of P^2 and, for
    each requested level pair, of exp(i (phi_j - phi_k)) P.  Work is
    split into per-worker seeded substreams and the partial sums are
    combined in worker order, so results are reproducible for a given
    (seed, workers) regardless of scheduling.
    """
    if n_samples <= 0:
        raise ValueError("n_samples must be positive")
    pairs = tuple(tuple(p) for p in pairs)
    for (j, k) in pairs:
        if j == k:
            raise EqualIndicesError("moment pairs need distinct levels")
        if not (0 <= j < dist.dim and 0 <= k < dist.dim):
            raise IndexOutOfRangeError(f"pair ({j}, {k}) out of range")
    workers = max(1, int(workers))
    counts = [n_samples // workers] * workers
    for w in range(n_samples % workers):
        counts[w] += 1
    seeds = np.random.SeedSequence(seed).spawn(workers)
    jobs = [(c, s) for c, s in zip(counts, seeds) if c > 0]
    if len(jobs) == 1:
        partials = [_mc_worker(dist, jobs[0][0], jobs[0][1], pairs)]
    else:
        with ThreadPoolExecutor(max_workers=len(jobs)) as pool:
            futures = [pool.submit(_mc_worker, dist, c, s, pairs) for c, s in jobs]
            partials = [f.result() for f in futures]
    sum_p = 0.0
    sum_p2 = 0.0
    sum_moments = {pair: 0.0 + 0.0j for pair in pairs}
    for part_p, part_p2, part_moments in partials:
        sum_p += part_p
        sum_p2 += part_p2
        for pair in pairs:
            sum_moments[pair] += part_moments[pair]
    return McPhaseStats(
        n_samples=n_samples,
        mean=sum_p / n_samples,
        mean_square=sum_p2 / n_samples,
        moments={pair: value / n_samples for pair, value in sum_moments.items()},
    )

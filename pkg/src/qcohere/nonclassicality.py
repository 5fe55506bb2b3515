"""Negativity witness for coherence-based nonclassicality.

For any pair of levels (j, k) carrying a coherence term, the two-level
restriction defines Pauli-like operators sigma_z, sigma_phi and
sigma_perp, with the phase phi aligned so that <sigma_phi> is the
(doubled) coherence modulus and <sigma_perp> vanishes.  Inverting a
noisy joint measurement of sigma_z and sigma_perp yields the joint
distribution

    p(y, z) = (1/4) [1 + z <sigma_z> + y <sigma_perp>
                       + y z (gamma_yz / (gamma_y gamma_z)) <sigma_phi>]

over the dichotomic outcomes y, z = +-1, where the gamma parameters of
the measurement satisfy gamma_y^2 + gamma_z^2 + gamma_yz^2 <= 1.  The
1/4 normalization fixes sum_yz p = 1 (the paper-level proportionality
leaves the scale open; unit normalization keeps negativity statements
scale-free).  Whenever the coherence term is nonzero, gamma_y gamma_z
can be made small enough that some p(y, z) < 0; when every coherence
vanishes, p(y, z) = (1 + z <sigma_z>)/4 >= 0 for every allowed gamma.
``witness_search`` turns this into a constructive certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import (
    EqualIndicesError,
    IndexOutOfRangeError,
    ZeroGammaDenominatorError,
)
from .coherence import coherence_profile
from .qcore import BasisObservable, DensityMatrix

__all__ = [
    "PauliSubspace",
    "GammaTriple",
    "JointDistribution",
    "NegativityCertificate",
    "ClassicalVerdict",
    "WitnessCertificate",
    "pauli_subspace",
    "joint_distribution",
    "witness_search",
    "classical_joint_minimum",
]

OUTCOMES = ((-1, -1), (-1, +1), (+1, -1), (+1, +1))

# Smallest |gamma_y|, |gamma_z| the search will use; keeps the gamma
# ratio finite and well conditioned.
GAMMA_FLOOR = 1e-6

_BALL_TOL = 1e-12


@dataclass(frozen=True)
class PauliSubspace:
    """Two-level restriction of a state with the aligned phase choice.

    ``exp_phi`` equals twice the coherence modulus and ``exp_perp`` is
    zero up to rounding; ``phi`` is stored in [0, 2 pi).
    """

    j: int
    k: int
    phi: float
    exp_z: float
    exp_phi: float
    exp_perp: float


@dataclass(frozen=True)
class GammaTriple:
    """Measurement parameters constrained to the closed unit ball.

    gamma_y and gamma_z must be nonzero for the gamma ratio in the
    joint distribution to exist.
    """

    gamma_y: float
    gamma_z: float
    gamma_yz: float

    def __post_init__(self):
        norm2 = self.gamma_y ** 2 + self.gamma_z ** 2 + self.gamma_yz ** 2
        if norm2 > 1.0 + _BALL_TOL:
            raise ValueError(f"gamma triple outside the unit ball: |gamma|^2 = {norm2!r}")
        if self.gamma_y == 0.0 or self.gamma_z == 0.0:
            raise ZeroGammaDenominatorError("gamma_y and gamma_z must be nonzero")

    @property
    def ratio(self) -> float:
        return self.gamma_yz / (self.gamma_y * self.gamma_z)


@dataclass(frozen=True)
class JointDistribution:
    """The four values p(y, z) with the gamma triple that produced them."""

    values: dict[tuple[int, int], float]
    gamma: GammaTriple
    subspace: PauliSubspace

    def value(self, y: int, z: int) -> float:
        return self.values[(y, z)]

    def min_outcome(self) -> tuple[tuple[int, int], float]:
        """Most negative outcome; lexicographically first on exact ties."""
        best_yz, best = OUTCOMES[0], self.values[OUTCOMES[0]]
        for yz in OUTCOMES[1:]:
            if self.values[yz] < best:
                best_yz, best = yz, self.values[yz]
        return best_yz, best


def pauli_subspace(rho: DensityMatrix, observable: BasisObservable,
                   j: int, k: int) -> PauliSubspace:
    """Expectations of sigma_z, sigma_phi, sigma_perp on levels (j, k).

    The phase is phi = -arg <j|rho|k| (mod 2 pi), which rotates the
    coherence term onto the positive real axis.
    """
    n = rho.dim
    if not (0 <= j < n and 0 <= k < n):
        raise IndexOutOfRangeError(f"indices ({j}, {k}) out of range for dimension {n}")
    if j == k:
        raise EqualIndicesError("subspace levels must differ")
    m = rho.in_basis(observable)
    coherence = m[j, k]
    phi = float(-np.angle(coherence)) % (2.0 * np.pi)
    phase = np.exp(1j * phi)
    exp_z = float((m[j, j] - m[k, k]).real)
    exp_phi = float((phase * m[k, j] + np.conj(phase) * m[j, k]).real)
    exp_perp = float((1j * (phase * m[k, j] - np.conj(phase) * m[j, k])).real)
    return PauliSubspace(j=j, k=k, phi=phi, exp_z=exp_z,
                         exp_phi=exp_phi, exp_perp=exp_perp)


def joint_distribution(subspace: PauliSubspace, gamma: GammaTriple) -> JointDistribution:
    """Evaluate p(y, z) for all four outcomes.

    Values may be negative; that negativity is exactly what certifies
    nonclassicality.  The sum over outcomes is 1 for every gamma
    because the y, z and yz terms cancel over the dichotomic sum.
    """
    if gamma.gamma_y == 0.0 or gamma.gamma_z == 0.0:
        raise ZeroGammaDenominatorError("gamma_y and gamma_z must be nonzero")
    ratio = gamma.ratio
    values = {
        (y, z): 0.25 * (1.0 + z * subspace.exp_z + y * subspace.exp_perp
                        + y * z * ratio * subspace.exp_phi)
        for (y, z) in OUTCOMES
    }
    return JointDistribution(values=values, gamma=gamma, subspace=subspace)


@dataclass(frozen=True)
class NegativityCertificate:
    """A gamma triple and outcome with p(y, z) < 0."""

    subspace: PauliSubspace
    gamma: GammaTriple
    y: int
    z: int
    value: float

    @property
    def is_nonclassical(self) -> bool:
        return True

    def to_json_dict(self) -> dict:
        return {
            "pair": [self.subspace.j, self.subspace.k],
            "phi": self.subspace.phi,
            "gamma": [self.gamma.gamma_y, self.gamma.gamma_z, self.gamma.gamma_yz],
            "y": self.y,
            "z": self.z,
            "p": self.value,
        }


@dataclass(frozen=True)
class ClassicalVerdict:
    """No negativity achievable: every coherence is below threshold.

    ``min_p`` is the infimum over allowed gamma and outcomes of p(y, z),
    which for a coherence-free subspace is (1 - |<sigma_z>|)/4 >= 0,
    minimized over all level pairs.
    """

    min_p: float

    @property
    def is_nonclassical(self) -> bool:
        return False

    def to_json_dict(self) -> dict:
        return {"verdict": "classical", "min_p": self.min_p}


WitnessCertificate = Union[NegativityCertificate, ClassicalVerdict]


def _schedule_t(exp_phi: float) -> float:
    """Closed-form gamma scale guaranteeing negativity for exp_phi > 0.

    With gamma_y = gamma_z = t and gamma_yz = sqrt(1 - 2 t^2), the ratio
    is sqrt(1 - 2 t^2)/t^2, and t = min(1/2, exp_phi/4) makes
    ratio * exp_phi > 1 + |<sigma_z>| with a wide margin for any state
    (exp_phi <= 1 on a unit-trace subspace).  The floor keeps the
    denominator well conditioned.
    """
    return max(GAMMA_FLOOR, min(0.5, exp_phi / 4.0))


def _schedule_gamma(t: float) -> GammaTriple:
    return GammaTriple(gamma_y=t, gamma_z=t, gamma_yz=float(np.sqrt(1.0 - 2.0 * t * t)))


def _golden_section_t(subspace: PauliSubspace, t_hi: float, iterations: int = 80) -> float:
    """Golden-section minimization of min_yz p(y, z) over the gamma scale t.

    The objective is monotone increasing in t, so this saturates at the
    floor; kept as the documented refinement pass.
    """
    inv_phi = (np.sqrt(5.0) - 1.0) / 2.0
    a, b = GAMMA_FLOOR, t_hi

    def objective(t: float) -> float:
        return joint_distribution(subspace, _schedule_gamma(t)).min_outcome()[1]

    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = objective(c), objective(d)
    for _ in range(iterations):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = objective(d)
    return c if fc < fd else d


def witness_search(rho: DensityMatrix, observable: BasisObservable,
                   tol_witness: float = 1e-9, refine: bool = False) -> WitnessCertificate:
    """Scan all level pairs and certify negativity if any coherence exists.

    For the pair of largest coherence modulus (lexicographically first
    on ties) above ``tol_witness``, builds the closed-form gamma
    schedule and returns the most negative outcome.  With ``refine``
    the gamma scale is additionally pushed down by golden-section
    search, reporting the most negative p reachable above the gamma
    floor.  If every coherence modulus is at most ``tol_witness``,
    returns a :class:`ClassicalVerdict` with the worst-case infimum
    (1 - |<sigma_z>|)/4 over pairs.
    """
    profile = coherence_profile(rho, observable)
    if rho.dim < 2:
        return ClassicalVerdict(min_p=0.25)
    (j, k), modulus = profile.max_pair()
    if modulus <= tol_witness:
        min_p = min(
            0.25 * (1.0 - abs(float(profile.diagonal[a] - profile.diagonal[b])))
            for a in range(rho.dim)
            for b in range(a + 1, rho.dim)
        )
        return ClassicalVerdict(min_p=min_p)
    subspace = pauli_subspace(rho, observable, j, k)
    t = _schedule_t(subspace.exp_phi)
    if refine:
        t = _golden_section_t(subspace, t_hi=np.sqrt(0.5) * (1.0 - 1e-12))
    gamma = _schedule_gamma(t)
    (y, z), value = joint_distribution(subspace, gamma).min_outcome()
    return NegativityCertificate(subspace=subspace, gamma=gamma, y=y, z=z, value=value)


def classical_joint_minimum(subspace: PauliSubspace, gammas) -> float:
    """Minimum of p(y, z) over an iterable of gamma triples.

    Test-oracle helper for the converse direction: for a coherence-free
    subspace the result is nonnegative no matter how the gammas range
    over the allowed ball.
    """
    best = np.inf
    for gamma in gammas:
        _, value = joint_distribution(subspace, gamma).min_outcome()
        best = min(best, value)
    return float(best)

"""Coherence terms relative to a basis and the Hilbert-Schmidt measure.

A state's coherences relative to an observable are the off-diagonal
entries of its matrix in the observable's eigenbasis; the diagonal
carries the observable's statistics.  This module extracts both,
computes the Hilbert-Schmidt coherence (the sum of squared moduli of
all off-diagonal entries), and constructs a basis exhibiting coherence
for any state other than the maximally mixed one, which is the unique
state diagonal in every basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import DimensionMismatchError
from .qcore import BasisObservable, DensityMatrix

__all__ = [
    "CoherenceProfile",
    "coherence_profile",
    "hilbert_schmidt_coherence",
    "CoherentBasis",
    "find_coherent_basis",
    "commutator_norm",
]

_PROFILE_TOL = 1e-10


@dataclass(frozen=True)
class CoherenceProfile:
    """Off-diagonal coherence terms and diagonal statistics of a state.

    ``pairs`` maps every ordered pair (j, k) with j != k to <j|rho|k>;
    the (k, j) entry is always the conjugate of the (j, k) entry.
    ``diagonal`` holds the probabilities p_j = <j|rho|j>.
    """

    dim: int
    pairs: dict[tuple[int, int], complex]
    diagonal: np.ndarray

    def __post_init__(self):
        for (j, k), value in self.pairs.items():
            if abs(value - np.conj(self.pairs[(k, j)])) > _PROFILE_TOL:
                raise ValueError(f"pair ({j},{k}) is not the conjugate of ({k},{j})")
        if abs(float(np.sum(self.diagonal)) - 1.0) > _PROFILE_TOL:
            raise ValueError("diagonal statistics do not sum to 1")
        if np.any(self.diagonal < -_PROFILE_TOL) or np.any(self.diagonal > 1.0 + _PROFILE_TOL):
            raise ValueError("diagonal statistics outside [0, 1]")

    def pair(self, j: int, k: int) -> complex:
        return self.pairs[(j, k)]

    def max_pair(self) -> tuple[tuple[int, int], float]:
        """The lexicographically first pair of maximal modulus, with its modulus.

        For dim 1 there are no pairs and the modulus is 0.
        """
        best = ((0, 0), 0.0)
        for j in range(self.dim):
            for k in range(self.dim):
                if j == k:
                    continue
                modulus = abs(self.pairs[(j, k)])
                if modulus > best[1] + 1e-15:
                    best = ((j, k), modulus)
        return best


def coherence_profile(rho: DensityMatrix, observable: BasisObservable) -> CoherenceProfile:
    """All off-diagonal entries and the diagonal of rho in the basis."""
    m = rho.in_basis(observable)
    n = rho.dim
    pairs = {
        (j, k): complex(m[j, k])
        for j in range(n)
        for k in range(n)
        if j != k
    }
    return CoherenceProfile(dim=n, pairs=pairs, diagonal=m.diagonal().real.copy())


def hilbert_schmidt_coherence(profile: CoherenceProfile) -> float:
    """Sum of |<j|rho|k>|^2 over all j != k.

    Lies in [0, (N-1)/N] for valid states, and satisfies the identity
    tr(rho^2) = sum_j p_j^2 + C_HS.
    """
    return float(sum(abs(v) ** 2 for v in profile.pairs.values()))


class CoherentBasis(NamedTuple):
    """A basis exhibiting coherence, with the achieved off-diagonal modulus."""

    basis: BasisObservable
    eps_out: float


def find_coherent_basis(rho: DensityMatrix, eps: float = 1e-10) -> Optional[CoherentBasis]:
    """Construct a basis in which ``rho`` has a coherence term, if any exists.

    Returns None when rho equals I/N entrywise within ``eps`` (the one
    state with no coherence in any basis).  Otherwise returns the
    computational basis when it already shows an off-diagonal modulus
    above ``eps``, or the basis obtained by a two-level Hadamard mixing
    of the pair of levels with the most different populations, which
    turns the population imbalance (p_j - p_k)/2 into a coherence.
    ``eps_out`` is the off-diagonal modulus actually achieved.
    """
    n = rho.dim
    m = rho.matrix
    if float(np.max(np.abs(m - np.eye(n) / n))) <= eps:
        return None
    off = np.abs(m - np.diag(np.diagonal(m)))
    if float(off.max()) > eps:
        basis = BasisObservable.computational(n)
        return CoherentBasis(basis, float(off.max()))
    # Near-diagonal state: mix the pair with the largest population gap,
    # preferring the lexicographically first pair on ties.
    p = np.diagonal(m).real
    best_pair, best_gap = (0, 1), -1.0
    for j in range(n):
        for k in range(j + 1, n):
            gap = abs(p[j] - p[k])
            if gap > best_gap + 1e-15:
                best_pair, best_gap = (j, k), gap
    basis = BasisObservable.hadamard_pair(n, *best_pair)
    achieved = float(np.max(np.abs(np.triu(rho.in_basis(basis), k=1))))
    return CoherentBasis(basis, achieved)


def commutator_norm(rho: DensityMatrix, observable: BasisObservable) -> float:
    """Frobenius norm of [G, rho] with G = sum_j g_j |j><j|.

    Zero exactly when all coherence terms between levels of distinct
    eigenvalue vanish; coherences inside a degenerate eigenspace of G do
    not contribute.
    """
    if rho.dim != observable.dim:
        raise DimensionMismatchError(
            f"state dimension {rho.dim} != observable dimension {observable.dim}"
        )
    g = observable.observable_matrix()
    return float(np.linalg.norm(g @ rho.matrix - rho.matrix @ g))

"""Pure numpy phase-evaluation kernels.

Reference implementation of the two hot loops; the Cython module
``_phase_cy`` computes the same quantities and is preferred at import
time when it was built.  Both backends must agree to rounding error.
"""

import numpy as np

BACKEND_NAME = "numpy"


def phase_batch(matrix: np.ndarray, phases: np.ndarray) -> np.ndarray:
    """Evaluate v^dag M v for a batch of phase vectors.

    ``matrix`` is N x N complex Hermitian, ``phases`` is S x N real; row
    s defines v_j = exp(i phases[s, j]).  Returns the S real values
    sum_jk exp(i (phases[s,k] - phases[s,j])) M_jk.
    """
    matrix = np.asarray(matrix, dtype=complex)
    phases = np.atleast_2d(np.asarray(phases, dtype=float))
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("matrix must be square")
    if phases.shape[1] != matrix.shape[0]:
        raise ValueError("phase vectors and matrix have different dimensions")
    v = np.exp(1j * phases)
    w = v @ matrix.T
    return np.einsum("sj,sj->s", v.conj(), w).real


def single_phase_batch(gammas: np.ndarray, phis: np.ndarray) -> np.ndarray:
    """Evaluate sum_tau Gamma(tau) exp(-i tau phi) on a batch of angles.

    ``gammas`` has odd length 2N-1 with lag tau stored at index
    tau + N - 1 and Gamma(-tau) = conj(Gamma(tau)), so the result is
    real by construction.
    """
    gammas = np.asarray(gammas, dtype=complex)
    phis = np.atleast_1d(np.asarray(phis, dtype=float))
    if gammas.ndim != 1 or gammas.shape[0] % 2 != 1:
        raise ValueError("gammas must be a 1-d array of odd length")
    half = (gammas.shape[0] - 1) // 2
    taus = np.arange(-half, half + 1)
    e = np.exp(-1j * np.outer(phis, taus))
    return (e @ gammas).real

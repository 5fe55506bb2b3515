"""Core state and observable types.

Everything downstream operates on the three value types defined here:

``DensityMatrix``
    An N x N complex matrix that is Hermitian, unit trace and positive
    semidefinite within the tolerances of :class:`Tolerances`.

``BasisObservable``
    An orthonormal basis (columns of a unitary) together with a real
    eigenvalue list, fixing both the basis the coherences refer to and
    the generator used to imprint signals.

``UnitarySignal``
    A generator plus a real signal value, providing the unitary that
    rotates states in the generator eigenbasis.

All types are immutable after construction (arrays are locked), so they
are safe to share across threads; the operations in this package are
pure functions.

Bases are 0-indexed internally.  The conventional ladder of generator
eigenvalues is the explicit list (1, 2, ..., N), so level ``j`` in
0-indexed code carries eigenvalue ``j + 1``; no off-by-one is hidden in
index arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidRankError,
    NonHermitianError,
    NonSquareError,
    NonUnitaryError,
    NotPositiveSemidefiniteError,
    TraceNotOneError,
)

__all__ = [
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
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances for state and basis validation.

    Dense eigensolves at the dimensions this package targets (N <= 64)
    keep rounding error far below these values, so they can be tight.
    """

    herm: float = 1e-9
    trace: float = 1e-9
    unitary: float = 1e-9
    psd: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class ValidationReport:
    """Per-invariant validation outcome for a candidate density matrix.

    Attributes
    ----------
    square:
        Whether the entries form a square 2-d matrix.  When False the
        remaining magnitudes are NaN.
    herm_violation:
        max_jk |rho_jk - conj(rho_kj)|.
    trace_violation:
        |sum_j rho_jj - 1|.
    min_eigenvalue:
        Smallest eigenvalue of the Hermitian part.
    failures:
        Names of the violated invariants, in check order.
    """

    square: bool
    herm_violation: float
    trace_violation: float
    min_eigenvalue: float
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def validate_state(entries, tolerances: Tolerances = DEFAULT_TOLERANCES) -> ValidationReport:
    """Check the density-matrix invariants on raw entries.

    Returns a :class:`ValidationReport` with the worst-case violation of
    each invariant; it never raises.  ``DensityMatrix`` uses this same
    check and raises on the first failure.
    """
    arr = np.asarray(entries, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        return ValidationReport(
            square=False,
            herm_violation=float("nan"),
            trace_violation=float("nan"),
            min_eigenvalue=float("nan"),
            failures=("non_square",),
        )
    failures = []
    herm_violation = float(np.max(np.abs(arr - arr.conj().T)))
    if herm_violation > tolerances.herm:
        failures.append("non_hermitian")
    trace_violation = float(abs(np.trace(arr).real - 1.0) + abs(np.trace(arr).imag))
    if trace_violation > tolerances.trace:
        failures.append("trace_not_one")
    # Eigenvalues of the Hermitian part; for a matrix that already passed
    # the hermiticity check this is the matrix itself up to tolerance.
    herm_part = 0.5 * (arr + arr.conj().T)
    min_eig = float(np.linalg.eigvalsh(herm_part)[0])
    if min_eig < -tolerances.psd:
        failures.append("not_positive_semidefinite")
    return ValidationReport(
        square=True,
        herm_violation=herm_violation,
        trace_violation=trace_violation,
        min_eigenvalue=min_eig,
        failures=tuple(failures),
    )


_VALIDATION_ERRORS = {
    "non_square": (NonSquareError, "entries do not form a square matrix"),
    "non_hermitian": (NonHermitianError, "matrix is not Hermitian: max |rho_jk - conj(rho_kj)| = {v:.3e}"),
    "trace_not_one": (TraceNotOneError, "matrix trace differs from 1 by {v:.3e}"),
    "not_positive_semidefinite": (
        NotPositiveSemidefiniteError,
        "matrix has minimum eigenvalue {v:.3e}",
    ),
}


def _lock(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class DensityMatrix:
    """A validated finite-dimensional quantum state.

    The constructor rejects entries that fail any invariant of
    :func:`validate_state`.  Entries within hermiticity tolerance are
    symmetrized exactly, and eigenvalues negative by less than the PSD
    tolerance are clamped to zero with the spectrum renormalized, so
    drift accumulated over composed evolutions does not compound.

    Parameters
    ----------
    entries:
        Square array-like of complex matrix elements.
    tolerances:
        Validation tolerances; defaults are module-wide.
    """

    __slots__ = ("_matrix", "_dim")

    def __init__(self, entries, tolerances: Tolerances = DEFAULT_TOLERANCES):
        arr = np.array(entries, dtype=complex)
        report = validate_state(arr, tolerances)
        for name in report.failures:
            exc, msg = _VALIDATION_ERRORS[name]
            if name == "non_square":
                raise exc(msg)
            value = {
                "non_hermitian": report.herm_violation,
                "trace_not_one": report.trace_violation,
                "not_positive_semidefinite": report.min_eigenvalue,
            }[name]
            raise exc(msg.format(v=value))
        arr = 0.5 * (arr + arr.conj().T)
        if report.min_eigenvalue < 0.0:
            # Negative by less than tol_psd: clamp in eigenbasis and
            # renormalize the trace.
            w, v = np.linalg.eigh(arr)
            w = np.clip(w, 0.0, None)
            arr = (v * w) @ v.conj().T
            arr /= np.trace(arr).real
        self._matrix = _lock(arr)
        self._dim = arr.shape[0]

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def matrix(self) -> np.ndarray:
        """Read-only N x N complex entries."""
        return self._matrix

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        """The state I/N."""
        return cls(np.eye(dim) / dim)

    @classmethod
    def pure(cls, amplitudes) -> "DensityMatrix":
        """Rank-1 projector onto the given (normalized here) ket."""
        ket = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(ket)
        if norm == 0.0:
            raise NotPositiveSemidefiniteError("cannot build a state from the zero vector")
        ket = ket / norm
        return cls(np.outer(ket, ket.conj()))

    @classmethod
    def plus_state(cls, dim: int) -> "DensityMatrix":
        """Uniform superposition (1/sqrt(N)) sum_j |j>; all entries 1/N."""
        return cls(np.full((dim, dim), 1.0 / dim))

    @classmethod
    def diagonal(cls, populations) -> "DensityMatrix":
        """State with the given populations and no coherence."""
        return cls(np.diag(np.asarray(populations, dtype=complex)))

    def in_basis(self, observable: "BasisObservable") -> np.ndarray:
        """Entries <j|rho|k> in the observable's eigenbasis."""
        if observable.dim != self._dim:
            raise DimensionMismatchError(
                f"state dimension {self._dim} != observable dimension {observable.dim}"
            )
        b = observable.basis
        return b.conj().T @ self._matrix @ b

    def purity(self) -> float:
        return float(np.trace(self._matrix @ self._matrix).real)

    def __repr__(self) -> str:
        return f"DensityMatrix(dim={self._dim}, purity={self.purity():.6f})"


class BasisObservable:
    """Orthonormal basis plus real eigenvalues defining an observable.

    The columns of ``basis`` are the kets |j>; ``eigenvalues[j]`` is the
    value g_j attached to |j>.  The observable matrix is
    ``basis @ diag(eigenvalues) @ basis^dagger``.

    When ``eigenvalues`` is omitted the conventional ladder
    (1, 2, ..., N) is used.
    """

    __slots__ = ("_basis", "_eigenvalues", "_dim")

    def __init__(self, basis, eigenvalues=None, tolerances: Tolerances = DEFAULT_TOLERANCES):
        b = np.array(basis, dtype=complex)
        if b.ndim != 2 or b.shape[0] != b.shape[1] or b.shape[0] == 0:
            raise NonSquareError("basis must be a square matrix of ket columns")
        dim = b.shape[0]
        deviation = float(np.max(np.abs(b.conj().T @ b - np.eye(dim))))
        if deviation > tolerances.unitary:
            raise NonUnitaryError(
                f"basis columns are not orthonormal: max |B^dag B - I| = {deviation:.3e}"
            )
        if eigenvalues is None:
            ev = np.arange(1, dim + 1, dtype=float)
        else:
            ev = np.asarray(eigenvalues, dtype=float).reshape(-1).copy()
            if ev.shape[0] != dim:
                raise DimensionMismatchError(
                    f"{ev.shape[0]} eigenvalues given for dimension {dim}"
                )
        self._basis = _lock(b)
        self._eigenvalues = _lock(ev)
        self._dim = dim

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def eigenvalues(self) -> np.ndarray:
        return self._eigenvalues

    @classmethod
    def computational(cls, dim: int, eigenvalues=None) -> "BasisObservable":
        """Identity basis; eigenvalues default to the ladder (1, ..., N)."""
        return cls(np.eye(dim), eigenvalues)

    @classmethod
    def linear(cls, dim: int) -> "BasisObservable":
        """Identity basis with the explicit ladder g_j = j, i.e. (1, ..., N)."""
        return cls(np.eye(dim), np.arange(1, dim + 1, dtype=float))

    @classmethod
    def hadamard_pair(cls, dim: int, j: int = 0, k: int = 1, eigenvalues=None) -> "BasisObservable":
        """Identity basis with a two-level Hadamard mixing of levels j and k.

        Column j becomes (|j> + |k>)/sqrt(2) and column k becomes
        (|j> - |k>)/sqrt(2); for dim == 2 this is the standard Hadamard.
        """
        if not (0 <= j < dim and 0 <= k < dim) or j == k:
            raise DimensionMismatchError("hadamard_pair needs two distinct in-range levels")
        b = np.eye(dim, dtype=complex)
        s = 1.0 / np.sqrt(2.0)
        b[:, j] = 0.0
        b[:, k] = 0.0
        b[j, j] = s
        b[k, j] = s
        b[j, k] = s
        b[k, k] = -s
        return cls(b, eigenvalues)

    @classmethod
    def fourier(cls, dim: int, offset: float = 0.0, eigenvalues=None) -> "BasisObservable":
        """Discrete Fourier basis with an optional half-step column offset.

        Column mu is (1/sqrt(N)) sum_j exp(2 pi i j (mu + offset) / N) |j>.
        With ``offset=0.5`` and dim 2 the columns are the sigma_y
        eigenvectors (|0> +- i |1>)/sqrt(2).
        """
        j = np.arange(dim).reshape(-1, 1)
        mu = np.arange(dim).reshape(1, -1)
        b = np.exp(2j * np.pi * j * (mu + offset) / dim) / np.sqrt(dim)
        return cls(b, eigenvalues)

    def observable_matrix(self) -> np.ndarray:
        """The matrix G = sum_j g_j |j><j|."""
        return (self._basis * self._eigenvalues) @ self._basis.conj().T

    def __repr__(self) -> str:
        return f"BasisObservable(dim={self._dim}, eigenvalues={self._eigenvalues.tolist()})"


class UnitarySignal:
    """A signal value lambda imprinted through U(lambda) = exp(-i lambda g).

    The generator is diagonal in its own basis, so the unitary is built
    directly as ``basis @ diag(exp(-i lambda g_j)) @ basis^dagger``; no
    general matrix exponential is involved.
    """

    __slots__ = ("generator", "lam")

    def __init__(self, generator: BasisObservable, lam: float,
                 tolerances: Tolerances = DEFAULT_TOLERANCES):
        self.generator = generator
        self.lam = float(lam)
        u = self.unitary()
        deviation = float(np.max(np.abs(u @ u.conj().T - np.eye(generator.dim))))
        if deviation > tolerances.unitary:
            raise NonUnitaryError(f"U(lambda) deviates from unitarity by {deviation:.3e}")

    @property
    def dim(self) -> int:
        return self.generator.dim

    def unitary(self) -> np.ndarray:
        b = self.generator.basis
        phases = np.exp(-1j * self.lam * self.generator.eigenvalues)
        return (b * phases) @ b.conj().T

    def __repr__(self) -> str:
        return f"UnitarySignal(lambda={self.lam!r}, generator={self.generator!r})"


def evolve(rho: DensityMatrix, signal: UnitarySignal) -> DensityMatrix:
    """Return U(lambda) rho U(lambda)^dagger.

    In the generator eigenbasis the entries pick up the phases
    exp(-i lambda (g_j - g_k)); diagonal entries (the observable's
    statistics) are unchanged.
    """
    if rho.dim != signal.dim:
        raise DimensionMismatchError(
            f"state dimension {rho.dim} != signal dimension {signal.dim}"
        )
    u = signal.unitary()
    return DensityMatrix(u @ rho.matrix @ u.conj().T)


def random_state(dim: int, rank: int, seed) -> DensityMatrix:
    """Seeded random state of the given rank.

    Draws a dim x rank complex Gaussian matrix A and normalizes
    A A^dagger to unit trace, which has rank ``rank`` almost surely.
    """
    if not 1 <= rank <= dim:
        raise InvalidRankError(f"rank must be in 1..{dim}, got {rank}")
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    m = a @ a.conj().T
    return DensityMatrix(m / np.trace(m).real)


def random_basis(dim: int, seed, eigenvalues=None) -> BasisObservable:
    """Seeded Haar-random basis (QR of a complex Ginibre matrix with the
    phases of R's diagonal absorbed)."""
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return BasisObservable(q, eigenvalues)


# ---------------------------------------------------------------------------
# JSON wire formats (consumed by the CLI)
#
# State:      {"dim": N, "re": [[...]], "im": [[...]]}
# Observable: {"dim": N, "eigenvalues": [...],
#              "basis_re": [[...]], "basis_im": [[...]]}
# Omitting "basis_re"/"basis_im" means the computational basis; omitting
# "im" means a real state matrix.
# ---------------------------------------------------------------------------

def state_to_dict(rho: DensityMatrix) -> dict:
    return {
        "dim": rho.dim,
        "re": rho.matrix.real.tolist(),
        "im": rho.matrix.imag.tolist(),
    }


def state_from_dict(data: dict, tolerances: Tolerances = DEFAULT_TOLERANCES) -> DensityMatrix:
    unknown = set(data) - {"dim", "re", "im"}
    if unknown:
        raise NonSquareError(f"unknown state file keys: {sorted(unknown)}")
    if "dim" not in data or "re" not in data:
        raise NonSquareError("state file needs at least the keys 'dim' and 're'")
    dim = int(data["dim"])
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise NonSquareError(
            f"state file matrices must be {dim} x {dim}, got re {re.shape} and im {im.shape}"
        )
    return DensityMatrix(re + 1j * im, tolerances)


def observable_to_dict(obs: BasisObservable) -> dict:
    return {
        "dim": obs.dim,
        "eigenvalues": obs.eigenvalues.tolist(),
        "basis_re": obs.basis.real.tolist(),
        "basis_im": obs.basis.imag.tolist(),
    }


def observable_from_dict(data: dict, tolerances: Tolerances = DEFAULT_TOLERANCES) -> BasisObservable:
    unknown = set(data) - {"dim", "eigenvalues", "basis_re", "basis_im"}
    if unknown:
        raise NonUnitaryError(f"unknown observable file keys: {sorted(unknown)}")
    if "dim" not in data or "eigenvalues" not in data:
        raise NonUnitaryError("observable file needs the keys 'dim' and 'eigenvalues'")
    dim = int(data["dim"])
    if "basis_re" in data or "basis_im" in data:
        re = np.asarray(data["basis_re"], dtype=float)
        im = np.asarray(data.get("basis_im", np.zeros_like(re)), dtype=float)
        basis = re + 1j * im
    else:
        basis = np.eye(dim)
    return BasisObservable(basis, data["eigenvalues"], tolerances)


def load_state(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))


def save_state(rho: DensityMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(rho), fh)
        fh.write("\n")


def load_observable(path) -> BasisObservable:
    with open(path, "r", encoding="utf-8") as fh:
        return observable_from_dict(json.load(fh))


def save_observable(obs: BasisObservable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(observable_to_dict(obs), fh)
        fh.write("\n")

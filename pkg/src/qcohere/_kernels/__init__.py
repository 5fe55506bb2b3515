"""Kernel backend selection.

The compiled Cython kernels are used when the extension was built;
otherwise the numpy implementation takes over.  ``BACKEND`` names the
active choice.  Both backends expose the same two functions:

``phase_batch(matrix, phases)``
    Batch evaluation of the multi-phase quadratic form v^dag M v.

``single_phase_batch(gammas, phis)``
    Batch evaluation of the lag-coefficient Fourier sum.
"""

from . import _phase_np

try:
    from . import _phase_cy as _impl
except ImportError:
    _impl = _phase_np

BACKEND = _impl.BACKEND_NAME
phase_batch = _impl.phase_batch
single_phase_batch = _impl.single_phase_batch


def available_backends() -> tuple[str, ...]:
    """Names of the importable backends, numpy first."""
    names = ["numpy"]
    if _impl is not _phase_np:
        names.append("cython")
    return tuple(names)


def get_backend(name: str):
    """Return the backend module of the given name ("numpy" or "cython")."""
    if name == "numpy":
        return _phase_np
    if name == "cython":
        if _impl is _phase_np:
            raise ValueError("cython backend is not built in this environment")
        return _impl
    raise ValueError(f"unknown backend {name!r}")

"""Build script for the optional compiled kernels.

The package is pure Python plus one Cython extension holding the hot
phase-evaluation loops.  The extension is marked optional: if it cannot
be built the install still succeeds and the package falls back to the
numpy implementation of the same kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "qcohere._kernels._phase_cy",
                ["src/qcohere/_kernels/_phase_cy.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
else:
    extensions = []

setup(ext_modules=extensions)

"""Build script: compiles the optional Cython reduction kernel.

The package is fully functional without the extension (a pure-Python
kernel with identical semantics is selected at import time), so any
failure to cythonize or compile is downgraded to a warning.
"""

import warnings

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/agt/_reduce_cy.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    warnings.warn(f"Cython kernel not built, using pure-Python fallback: {exc}")

setup(ext_modules=ext_modules)

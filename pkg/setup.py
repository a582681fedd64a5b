"""Build script: compiles the optional Cython kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), so any build failure here is non-fatal.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/mwt/kernels/_speedups.pyx",
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"warning: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)

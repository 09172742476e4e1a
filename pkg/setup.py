"""Build script: compiles the optional Cython kernel extension.

The package is pure Python with a compiled fast path for the Laurent
polynomial kernels.  If Cython or a C compiler is unavailable the build
falls back to the pure Python kernels transparently.
"""
import os
from setuptools import setup

ext_modules = []
if os.environ.get("QSO_SPECTRA_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qso_spectra/_kernels.pyx"],
            language_level=3,
        )
    except Exception as exc:  # pragma: no cover - build-time only
        print(f"warning: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)

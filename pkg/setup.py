"""Build script: compiles the optional Numerov sweep extension.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed compile is downgraded to a warning.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "radial_theorems._numerov_cy",
                ["src/radial_theorems/_numerov_cy.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - depends on build host
    warnings.warn(f"building without compiled Numerov kernel: {exc}")

setup(ext_modules=ext_modules)

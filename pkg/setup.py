"""Build script: compiles the optional grid-classification extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); set PRODKERN_PURE=1 to skip compilation.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PRODKERN_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "prodkern._basincy",
                    ["src/prodkern/_basincy.pyx"],
                    # -ffp-contract=off keeps the compiled orbit arithmetic
                    # bit-identical to the pure-Python/numpy backend.
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

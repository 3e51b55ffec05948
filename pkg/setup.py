"""Build shim for the optional compiled kernels.

The package is pure Python plus one Cython extension. When Cython (or a C++
toolchain) is unavailable the extension is skipped and brickline falls back
to the pure-Python kernels at import time.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BRICKLINE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "brickline._speedups",
                    sources=["src/brickline/_speedups.pyx"],
                    language="c++",
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

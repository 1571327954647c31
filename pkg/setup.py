"""Builds the optional compiled kernels.

The package is fully functional without the extension: ``pivotal._kernels``
falls back to the pure-Python reference kernels when the compiled module is
missing.  Set ``PIVOTAL_SKIP_EXT=1`` to force a pure build.

``-ffp-contract=off`` is required: the Monte Carlo kernel promises bitwise
identical output to the pure-Python fallback, which rules out FMA contraction.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PIVOTAL_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "pivotal._kernels._fast",
                    ["src/pivotal/_kernels/_fast.pyx"],
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)

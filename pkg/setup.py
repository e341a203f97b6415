"""Builds the optional Cython kernels; everything else is in pyproject.toml."""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("HOLORED_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not available: installing the pure-Python kernels only")
    else:
        ext_modules = cythonize(
            [Extension("holored._kernels", ["src/holored/_kernels.pyx"],
                       extra_compile_args=["-O2"])],
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False},
        )

setup(ext_modules=ext_modules)

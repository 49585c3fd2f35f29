"""Build script. The Cython force-layout kernel is optional: if Cython (or a C
compiler) is unavailable, or GTRBENCH_NO_EXT=1 is set, the package installs as
pure Python and gtrbench._kernels falls back to the numpy implementation."""

import os

from setuptools import setup

ext_modules = []
include_dirs = []
if os.environ.get("GTRBENCH_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/gtrbench/_kernels/_forcelayout.pyx"],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
        include_dirs = [numpy.get_include()]
    except ImportError:
        pass

setup(ext_modules=ext_modules, include_dirs=include_dirs)

"""Builds the optional compiled kernel backend.

The package is pure Python plus one Cython extension holding the mesh hot
loops.  The extension is marked optional: if it cannot be built (no Cython,
no compiler, or the source is absent), the install still succeeds and the
NumPy fallback backend is selected at import time.
"""

import os

from setuptools import Extension, setup

_PYX = os.path.join("src", "minkflow", "_backend", "_kernels.pyx")

ext_modules = []
if os.path.exists(_PYX):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "minkflow._backend._kernels",
                    [_PYX],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)

"""Build shim: compiles the optional int64 wedge kernel when Cython is present.

The package is fully functional without the extension; kernels/__init__.py
falls back to the pure-Python implementation at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "obstructa.kernels._speedups",
                ["src/obstructa/kernels/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

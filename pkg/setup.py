"""Build script: compiles the optional closure/cut kernel extension.

The package is fully functional without the extension; ``mvlat.kernels``
falls back to a pure-Python implementation when the compiled module is
missing.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mvlat/_ckernels.pyx"],
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

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/relyroute/_cutcore.pyx"],
        language_level=3,
    )
except ImportError:
    # No Cython: install the pure-Python fallback only.
    print("relyroute: Cython not available, building without the compiled kernel",
          file=sys.stderr)

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("lorcone._kernel._jacobi", ["src/lorcone/_kernel/_jacobi.pyx"])],
        language_level=3,
    )
except ImportError:
    # No Cython: install pure-Python only, the kernel falls back at import time.
    ext_modules = []

setup(ext_modules=ext_modules)

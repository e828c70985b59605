"""Build hook for the optional compiled kernels.

The package works without the extension; ordercalc._kernels falls back to
the numpy reference implementation when the compiled module is absent.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ordercalc._kernels._fast",
                ["src/ordercalc/_kernels/_fast.pyx"],
            )
        ],
        language_level="3",
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)

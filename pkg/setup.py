"""Build script.

Compiles the de Casteljau evaluation kernel when Cython and a C toolchain
are available.  If the extension cannot be built the package still works:
bernint._kernels falls back to a vectorized numpy implementation at import
time, so a pure-Python install only costs speed.
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bernint._decasteljau",
                ["src/bernint/_decasteljau.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

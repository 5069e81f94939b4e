"""Build script: compiles the optional fast kernel.

The package works without the extension (a pure-Python kernel with the
same interface is selected at import time), so failure to build the
extension only costs speed, not functionality.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "f1kgw._core",
                ["src/f1kgw/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

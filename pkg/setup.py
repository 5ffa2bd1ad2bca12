"""Build script for the optional compiled sweep kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing Cython or C++ toolchain only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "conflictcliques._kernel",
                ["src/conflictcliques/_kernel.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)

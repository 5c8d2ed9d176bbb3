"""Build the optional compiled kernels.

Without Cython or a C++ compiler the package installs as pure Python and
the kernels fall back to ``vpamin.sat._pysolver`` and ``vpamin.sat._pybrute``.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension("vpamin.sat._csolver", ["src/vpamin/sat/_csolver.pyx"],
                      language="c++", extra_compile_args=["-O3"]),
            Extension("vpamin.sat._cbrute", ["src/vpamin/sat/_cbrute.pyx"],
                      language="c++", extra_compile_args=["-O3"]),
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

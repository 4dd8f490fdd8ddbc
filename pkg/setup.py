"""Build script for the compiled kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the extension just makes the statevector kernels
faster.  `pip install -e . --no-build-isolation` compiles it in place.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pdqaoa.backends._core",
                ["src/pdqaoa/backends/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

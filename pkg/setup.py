"""Build script for the optional compiled kernel.

The extension links against MPFR/GMP and accelerates the alternating
binomial sums that dominate large scans.  It is marked optional: if the
toolchain or the libraries are missing the install still succeeds and the
package falls back to its pure-Python backend at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build helper only
    cythonize = None

extensions = [
    Extension(
        "contangle.kernels._sumcore",
        sources=["src/contangle/kernels/_sumcore.pyx"],
        libraries=["mpfr", "gmp"],
        extra_compile_args=["-O2"],
        optional=True,
    )
]

setup(
    ext_modules=cythonize(extensions, language_level=3) if cythonize else [],
)

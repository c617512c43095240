"""Build hook for the optional compiled kernels.

The extension links against GMP. When Cython or libgmp is missing the build
is skipped and ``hyperdet`` falls back to its pure-Python kernels.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hyperdet._kernels",
                ["src/hyperdet/_kernels.pyx"],
                libraries=["gmp"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "embedsignature": True,
        },
    )

setup(ext_modules=ext_modules)

"""Build script: compiles the optional Cython stepping kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so any failure here only costs speed, not functionality.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "spindyn._kernels_c",
                ["src/spindyn/_kernels_c.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"spindyn: skipping compiled kernel ({exc}); pure-Python fallback will be used")
    ext_modules = []

setup(ext_modules=ext_modules)

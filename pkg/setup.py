"""Builds the optional Cython kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CHOICE_CENSUS_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "choicecensus._kernels",
                    ["src/choicecensus/_kernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

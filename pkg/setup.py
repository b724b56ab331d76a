from setuptools import Extension, setup

from Cython.Build import cythonize
import numpy as np

extensions = [
    Extension(
        "epzeta._kernels._core",
        ["src/epzeta/_kernels/_core.pyx"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
    )
]

compiler_directives = {
    "language_level": 3,
    "embedsignature": True,
    "boundscheck": False,
    "wraparound": False,
    "cdivision": True,
}

setup(ext_modules=cythonize(extensions, compiler_directives=compiler_directives))

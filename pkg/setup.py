import os

import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional; without Cython the package falls back to
# qcldpc._pykernels at import time.
ext_modules = []
if os.environ.get("QCLDPC_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "qcldpc._ckernels",
                    ["src/qcldpc/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)

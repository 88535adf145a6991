from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        [
            Extension(
                "selfheal._kernels._speed",
                ["src/selfheal/_kernels/_speed.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython/numpy at build time: install pure-Python only; the kernel
    # shim falls back at import.
    ext_modules = []

setup(ext_modules=ext_modules)

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# Compiled raster kernels are optional: genanim.kernels falls back to the
# numpy implementations when the extension is absent.
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "genanim.kernels._core",
                ["src/genanim/kernels/_core.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)

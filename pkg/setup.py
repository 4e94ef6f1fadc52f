from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled kernel is optional: the package falls back to the pure
# Python implementation in skewlie._kernel._kernel_py when the build is
# unavailable on the target platform.
ext = Extension(
    "skewlie._kernel._fastkernel",
    ["src/skewlie/_kernel/_fastkernel.pyx"],
    optional=True,
)

setup(ext_modules=cythonize([ext], language_level=3))

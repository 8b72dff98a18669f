"""Build script for the optional compiled neighbor-counting kernel.

The package works without the extension: dynadim._neighbors falls back to
a pure numpy implementation when dynadim._hashgrid is not importable.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dynadim._hashgrid",
                ["src/dynadim/_hashgrid.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

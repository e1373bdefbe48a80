from setuptools import Extension, setup

# The compiled kernels are optional: when Cython (or a C compiler) is not
# available the package falls back to the pure-Python kernels at import time.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "covred._kernels",
                ["src/covred/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

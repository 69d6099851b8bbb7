from setuptools import Extension, setup

# The compiled kernel is optional: caplab._kernels falls back to the pure
# Python implementation when the extension is missing.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("caplab._kernels._fast", ["src/caplab/_kernels/_fast.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception:
    pass

setup(ext_modules=ext_modules)

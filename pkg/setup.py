from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the pure-Python
# twin (heckerpf._kernel) when the extension is missing or fails to build.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "heckerpf._ckernel",
                ["src/heckerpf/_ckernel.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)

import os

from setuptools import Extension, setup

PYX = os.path.join("src", "herext", "_ckernel.pyx")

ext_modules = []
if os.path.exists(PYX):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "herext._ckernel",
                [PYX],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)

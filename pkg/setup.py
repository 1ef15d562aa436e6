import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

exts = [
    Extension(
        f"dnfuchs.{name}",
        [f"src/dnfuchs/{name}.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # no -ffast-math: the double-double kernel relies on exact rounding
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    for name in ("_odekernel", "_ddtaylor")
]

setup(ext_modules=cythonize(exts, compiler_directives={"language_level": "3"}))

"""Build the optional Cython kernels; the package falls back to pure Python without them."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("EQPIERI_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("eqpieri._ckernels", ["src/eqpieri/_ckernels.pyx"],
                       extra_compile_args=["-O3", "-std=c++17"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)

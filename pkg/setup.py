import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; the fallback kernel is used
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("GYROLAB_NO_EXT"):
    ext_modules = cythonize(
        [Extension("gyrolab._ckernel", ["src/gyrolab/_ckernel.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernels fall back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("tilemealy._kernels._ckernels", ["src/tilemealy/_kernels/_ckernels.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)

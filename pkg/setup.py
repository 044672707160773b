"""Build script: compiles the optional Cython kernel extension.

The extension is a pure speedup; if Cython or a C compiler is missing the
package installs anyway and `conequant.kernels` falls back to the pure-Python
twin at import time.  Set CONEQUANT_NO_EXT=1 to skip the build explicitly.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("CONEQUANT_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("conequant._kernels", ["src/conequant/_kernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

"""Build hook for the optional compiled enumeration kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so any failure here degrades to a source-only install.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/tetspine/_enumcore.pyx"],
        language_level=3,
    )
except Exception as exc:  # no Cython / no compiler: install without the kernel
    print(f"skipping compiled kernel: {exc}", file=sys.stderr)

setup(ext_modules=ext_modules)

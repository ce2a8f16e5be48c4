"""Build script for the optional compiled kernels.

The package is fully functional without the extension: tracegraph.kernels
falls back to pure-numpy implementations when tracegraph._speedups is not
importable. The extension build is therefore best-effort and never fails
the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: skipping {ext.name} ({exc})", file=sys.stderr)


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension
    except ImportError:
        return []
    return cythonize(
        [
            Extension(
                "tracegraph._speedups",
                ["src/tracegraph/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})

"""Builds the optional compiled region-classification kernel.

The package is fully functional without it: gazepie.geometry falls back to
the pure-Python kernel at import time, so any Cython or C-compiler failure
here is downgraded to a warning.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("gazepie: Cython not available, skipping compiled kernel", file=sys.stderr)
        return []
    return cythonize(["src/gazepie/_kernel.pyx"], language_level="3")


class optional_build_ext(build_ext):
    """build_ext that tolerates a missing or broken C toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"gazepie: compiled kernel build failed ({exc}); "
            "falling back to the pure-Python kernel",
            file=sys.stderr,
        )


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})

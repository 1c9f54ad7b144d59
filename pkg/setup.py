"""Build script: compiles the optional fast arithmetic core.

The package works without the extension (a pure-Python backend is selected
at import time), so compilation failures downgrade to a warning instead of
aborting the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, no Cython, ...
            print(f"WARNING: fast core not built ({exc}); "
                  "falling back to the pure-Python backend", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"WARNING: {ext.name} not built ({exc})", file=sys.stderr)


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython unavailable; pure-Python backend only",
              file=sys.stderr)
        return []
    return cythonize(
        ["src/hurwitz_lab/_backend/fastcore.pyx"],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

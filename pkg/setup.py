"""Build script: compiles the optional Cython arithmetic kernel.

The package is fully functional without the extension; if the compiler or
Cython is unavailable the build falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping compiled kernel {ext.name} ({exc})")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("neutrality._kernel", ["src/neutrality/_kernel.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - toolchain dependent
    print(f"warning: Cython unavailable, using pure-Python kernel ({exc})")
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

"""Build hook for the optional compiled term core.

Without Cython (or a C compiler) the package installs pure Python and
``linpbt.terms`` falls back to ``linpbt._pycore``.
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as e:  # no compiler: keep the pure-Python install
            print(f"warning: compiled core not built ({e}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as e:
            print(f"warning: {ext.name} not built ({e})")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/linpbt/_ccore.pyx", "src/linpbt/_ckernel.pyx", "src/linpbt/_cvanilla.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})

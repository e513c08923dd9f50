"""Build the optional compiled straightening kernel.

If Cython or a C compiler is unavailable the package still installs and
uses the pure-Python kernel in ``infhecke._kernel_py``.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler: fall back to pure Python
            print(f"warning: compiled kernel not built ({exc}); using the Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using the Python kernel")


try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("infhecke._kernel", ["src/infhecke/_kernel.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

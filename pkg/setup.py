import warnings

from setuptools import setup, Extension
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the compiled kernels if possible; fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({exc}); using pure-Python fallback")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "blindreset._kernels._core",
        ["src/blindreset/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        # keep results bit-identical with the pure-Python fallback: no FMA
        # contraction, no sin/cos -> sincos fusion
        extra_compile_args=["-ffp-contract=off", "-fno-builtin-sin", "-fno-builtin-cos"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)

from Cython.Build import cythonize
from setuptools import Extension, setup

# the compiled search core is optional at runtime: completion.py falls back to
# the pure-Python twin (_search.py) when the import fails
setup(
    ext_modules=cythonize(
        [Extension("lvcoex._speedups", ["src/lvcoex/_speedups.pyx"])],
        language_level=3,
    )
)

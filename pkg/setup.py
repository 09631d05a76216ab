# Builds the optional compiled kernels.  The package is fully functional
# without them (a numpy fallback is selected at import), so the extension
# is skipped when Cython or a C compiler is unavailable:
#
#   python setup.py build_ext --inplace      # compile kernels into src/neariso/
#   pip install -e .                         # works either way
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np

    ext_modules = cythonize(
        "src/neariso/_kernels.pyx",
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.include_dirs.append(np.get_include())
except ImportError:
    pass

setup(ext_modules=ext_modules)

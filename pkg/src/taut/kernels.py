"""Backend selection for the hot arithmetic kernels.

The compiled module is used when it was built and ``TAUT_PURE_PYTHON`` is not
set; otherwise the pure-Python reference implementation is loaded.
"""

import os

BACKEND = "python"

if not os.environ.get("TAUT_PURE_PYTHON"):
    try:
        from ._kernels_cy import axpy, poly_mul, weyl_mono_mul, weyl_mul, weyl_term_mul

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

if BACKEND == "python":
    from ._kernels_py import axpy, poly_mul, weyl_mono_mul, weyl_mul, weyl_term_mul

__all__ = ["BACKEND", "axpy", "poly_mul", "weyl_mono_mul", "weyl_mul", "weyl_term_mul"]

"""Backend selection for the integer kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``HOLORED_PURE_PYTHON`` is set to a non-empty value,
the pure-Python twins are used.  ``BACKEND`` records the choice.
"""

import os

from . import _pykernels

if os.environ.get("HOLORED_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

int_poly_mul = _impl.int_poly_mul
int_taylor_shift = _impl.int_taylor_shift
binomial_sum_terms = _impl.binomial_sum_terms

__all__ = ["BACKEND", "int_poly_mul", "int_taylor_shift", "binomial_sum_terms"]

"""Exact reduction of polynomial-weighted sums of holonomic sequences.

Given a linear recurrence operator L for a sequence F, the adjoint L* maps
polynomials p to weights L*(p) whose partial sums against F telescope.
This package reduces arbitrary polynomial weights modulo the image of L*,
generates new series identities from known ones, and checks the resulting
series and congruences numerically.
"""

from .kernels import BACKEND
from .operators import RecOperator, adjoint_apply, certificate, degree_data
from .poly import UniPoly, poly_parse
from .reduction import reduce, telescoped_sum

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "RecOperator", "UniPoly", "adjoint_apply", "certificate", "degree_data",
    "poly_parse", "reduce", "telescoped_sum",
]

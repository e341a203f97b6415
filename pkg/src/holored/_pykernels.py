"""Pure-Python versions of the integer kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``.
Inputs and outputs are plain lists of Python ints so either backend can be
swapped in without touching callers.
"""

from math import comb


def int_poly_mul(a, b):
    """Dense product of two integer coefficient lists (index = power)."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def int_taylor_shift(c, a):
    """Coefficients of p(n + a) given those of p(n), a an int."""
    c = list(c)
    m = len(c)
    if a == 0 or m < 2:
        return c
    # synthetic division, repeated: O(m^2) multiply-adds
    for i in range(m - 1):
        for j in range(m - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _binom(n, k):
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def binomial_sum_terms(count, factors, prefactors):
    """Exact values T(0..count-1) of a binomial-sum rule.

    ``factors`` are tuples (tn, tk, tc, bn, bk, bc, power) describing
    C(tn*n + tk*k + tc, bn*n + bk*k + bc)**power inside the sum over
    k = 0..n.  ``prefactors`` use the same tuples with tk = bk = 0 and
    multiply the whole sum.
    """
    out = []
    for n in range(count):
        total = 0
        for k in range(n + 1):
            term = 1
            for tn, tk, tc, bn, bk, bc, power in factors:
                v = _binom(tn * n + tk * k + tc, bn * n + bk * k + bc)
                if v == 0:
                    term = 0
                    break
                term *= v if power == 1 else v ** power
            total += term
        for tn, _tk, tc, bn, _bk, bc, power in prefactors:
            total *= _binom(tn * n + tc, bn * n + bc) ** power
        out.append(total)
    return out

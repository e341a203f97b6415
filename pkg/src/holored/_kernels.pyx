# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer kernels; see _pykernels.py for the reference versions."""

from array import array
from math import comb


def int_poly_mul(list a, list b):
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    cdef object x
    if la == 0 or lb == 0:
        return []
    cdef list out = [0] * (la + lb - 1)
    for i in range(la):
        x = a[i]
        if x == 0:
            continue
        for j in range(lb):
            out[i + j] = out[i + j] + x * b[j]
    return out


def int_taylor_shift(c, object a):
    cdef list cc = list(c)
    cdef Py_ssize_t m = len(cc), i, j
    if a == 0 or m < 2:
        return cc
    for i in range(m - 1):
        for j in range(m - 2, i - 1, -1):
            cc[j] = cc[j] + a * cc[j + 1]
    return cc


cdef inline object _binom(long n, long k):
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def binomial_sum_terms(long count, factors, prefactors):
    cdef long n, k, f, power
    cdef long nf = len(factors), npf = len(prefactors)
    cdef object total, term, v
    # rule tuples flattened to 7 longs per factor; arrays stay referenced here
    fac_arr = array("l", [x for row in factors for x in row] or [0])
    pre_arr = array("l", [x for row in prefactors for x in row] or [0])
    cdef long[:] fac = fac_arr
    cdef long[:] pre = pre_arr
    cdef list out = []
    for n in range(count):
        total = 0
        for k in range(n + 1):
            term = 1
            for f in range(nf):
                v = _binom(fac[7*f] * n + fac[7*f + 1] * k + fac[7*f + 2],
                           fac[7*f + 3] * n + fac[7*f + 4] * k + fac[7*f + 5])
                if v == 0:
                    term = 0
                    break
                power = fac[7*f + 6]
                term = term * (v if power == 1 else v ** power)
            total = total + term
        for f in range(npf):
            total = total * _binom(pre[7*f] * n + pre[7*f + 2],
                                   pre[7*f + 3] * n + pre[7*f + 5]) ** pre[7*f + 6]
        out.append(total)
    return out

# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of the pure arithmetic kernel (see _kernel.py).

Coefficients stay arbitrary-precision Python integers - correctness first -
so the win here is loop and dispatch overhead, which dominates at the small
degrees (<= 8 or so) this library works at.
"""

from math import gcd


def addv(a, b):
    cdef Py_ssize_t i, n = len(a)
    return tuple([a[i] + b[i] for i in range(n)])


def subv(a, b):
    cdef Py_ssize_t i, n = len(a)
    return tuple([a[i] - b[i] for i in range(n)])


def negv(a):
    cdef Py_ssize_t i, n = len(a)
    return tuple([-a[i] for i in range(n)])


def scalev(a, s):
    cdef Py_ssize_t i, n = len(a)
    return tuple([a[i] * s for i in range(n)])


def content(a):
    cdef Py_ssize_t i, n = len(a)
    g = 0
    for i in range(n):
        g = gcd(g, a[i])
        if g == 1:
            return 1
    return g


def mulmod(a, b, red):
    cdef Py_ssize_t d = len(a)
    cdef Py_ssize_t i, j, e
    if d == 1:
        return (a[0] * b[0],)
    prod = [0] * (2 * d - 1)
    for i in range(d):
        x = a[i]
        if x:
            for j in range(d):
                y = b[j]
                if y:
                    prod[i + j] = prod[i + j] + x * y
    for e in range(2 * d - 2, d - 1, -1):
        c = prod[e]
        if c:
            row = red[e - d]
            for i in range(d):
                r = row[i]
                if r:
                    prod[i] = prod[i] + c * r
    return tuple(prod[:d])

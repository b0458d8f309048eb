"""Pure-Python arithmetic kernel.

Dense integer coefficient vectors of a fixed length d, representing ring
elements modulo a monic degree-d integer polynomial. The reduction table
`red` has d-1 rows; row e holds the fully reduced coefficient vector of
x^(d+e). A compiled twin of this module lives in _ckernel.pyx; both expose
the same functions so the backend can be swapped at import time.
"""

from math import gcd


def addv(a, b):
    return tuple(x + y for x, y in zip(a, b))


def subv(a, b):
    return tuple(x - y for x, y in zip(a, b))


def negv(a):
    return tuple(-x for x in a)


def scalev(a, s):
    return tuple(x * s for x in a)


def content(a):
    g = 0
    for x in a:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def mulmod(a, b, red):
    d = len(a)
    if d == 1:
        # degree-1 ring: plain integer multiplication, nothing to reduce
        return (a[0] * b[0],)
    prod = [0] * (2 * d - 1)
    for i in range(d):
        x = a[i]
        if x:
            for j in range(d):
                y = b[j]
                if y:
                    prod[i + j] += x * y
    # fold the high block down through the reduction rows
    for e in range(2 * d - 2, d - 1, -1):
        c = prod[e]
        if c:
            row = red[e - d]
            for i in range(d):
                r = row[i]
                if r:
                    prod[i] += c * r
    return tuple(prod[:d])

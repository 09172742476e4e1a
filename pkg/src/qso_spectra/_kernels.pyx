# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for Laurent polynomial arithmetic over Q.

Same API as ``_kernels_py``.  Coefficients stay Python Fractions (exact
arithmetic is the point); the speedup comes from removing interpreter
overhead in the dict-merge and convolution loops.
"""

from fractions import Fraction

BACKEND_NAME = "c"

cdef object _ZERO = Fraction(0)


def lp_add(dict a, dict b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def lp_neg(dict a):
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e] = -c
    return out


def lp_sub(dict a, dict b):
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        s = out.get(e)
        if s is None:
            out[e] = -c
        else:
            s = s - c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def lp_mul(dict a, dict b):
    if not a or not b:
        return {}
    cdef dict out = {}
    cdef object ea, ca, eb, cb, e, s
    if len(a) == 1:
        for ea, ca in a.items():
            for eb, cb in b.items():
                out[ea + eb] = ca * cb
        return out
    if len(b) == 1:
        for eb, cb in b.items():
            for ea, ca in a.items():
                out[ea + eb] = ca * cb
        return out
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e)
            if s is None:
                out[e] = ca * cb
            else:
                s = s + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def lp_scale(dict a, c):
    if not c:
        return {}
    cdef dict out = {}
    cdef object e, co
    for e, co in a.items():
        out[e] = co * c
    return out


def lp_shift(dict a, k):
    if not k:
        return dict(a)
    cdef dict out = {}
    cdef object e, c
    for e, c in a.items():
        out[e + k] = c
    return out


def lp_eval(dict a, x):
    cdef object total = _ZERO
    cdef object e, c
    for e, c in a.items():
        total = total + c * x ** e
    return total


def plist_divmod(list a, list b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    cdef list r = list(a)
    cdef Py_ssize_t db = len(b) - 1
    cdef object lb = b[db]
    cdef list q = [_ZERO] * (len(r) - db if len(r) > db else 0)
    cdef Py_ssize_t dr, i
    cdef object f
    while len(r) - 1 >= db:
        dr = len(r) - 1
        if not r[dr]:
            r.pop()
            continue
        f = r[dr] / lb
        q[dr - db] = f
        for i in range(db + 1):
            r[dr - db + i] = r[dr - db + i] - f * b[i]
        r.pop()
    while r and not r[len(r) - 1]:
        r.pop()
    while q and not q[len(q) - 1]:
        q.pop()
    return q, r


def _primitive(list p):
    """Rescale to integer coefficients with content 1."""
    if not p:
        return p
    from math import gcd as igcd
    cdef object den = 1
    cdef object g = 0
    cdef object c, n
    cdef list ints = []
    for c in p:
        den = den * c.denominator // igcd(den, c.denominator)
    for c in p:
        n = int(c * den)
        ints.append(n)
        g = igcd(g, n)
    if g > 1:
        ints = [n // g for n in ints]
    return [Fraction(n) for n in ints]


def plist_gcd(list a, list b):
    cdef list x = _primitive(list(a))
    cdef list y = _primitive(list(b))
    cdef list r
    cdef object lead
    while y:
        _, r = plist_divmod(x, y)
        x, y = y, _primitive(r)
    if x:
        lead = x[len(x) - 1]
        if lead != 1:
            x = [c / lead for c in x]
    return x

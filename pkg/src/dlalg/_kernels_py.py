"""Pure-Python sparse polynomial kernels.

Terms are dicts mapping exponent tuples to nonzero rational coefficients.
Integral coefficients are stored as ``int``; everything else as ``Fraction``.
The compiled module ``_kernels`` exposes the same functions.
"""
from fractions import Fraction

BACKEND = "python"


def norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for k, v in b.items():
        s = r.get(k)
        if s is None:
            r[k] = v
        else:
            s = s + v
            if s:
                r[k] = norm(s)
            else:
                del r[k]
    return r


def sub(a, b):
    r = dict(a)
    for k, v in b.items():
        s = r.get(k)
        if s is None:
            r[k] = -v
        else:
            s = s - v
            if s:
                r[k] = norm(s)
            else:
                del r[k]
    return r


def scale(a, c):
    if not c:
        return {}
    return {k: norm(v * c) for k, v in a.items()}


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    r = {}
    get = r.get
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple([x + y for x, y in zip(ka, kb)])
            r[k] = get(k, 0) + va * vb
    return {k: norm(v) for k, v in r.items() if v}


def partial(a, idx):
    r = {}
    for k, v in a.items():
        e = k[idx]
        if e:
            kk = k[:idx] + (e - 1,) + k[idx + 1:]
            r[kk] = norm(v * e)
    return r


def evaluate(a, point):
    total = 0
    for k, v in a.items():
        t = v
        for x, e in zip(point, k):
            if e:
                t = t * x ** e
        total = total + t
    return norm(total)

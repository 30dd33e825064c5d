# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels; same contract as ``_kernels_py``."""
from fractions import Fraction

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM

BACKEND = "cython"

cdef object _Fraction = Fraction


cdef inline object _norm(object c):
    if type(c) is _Fraction and c.denominator == 1:
        return c.numerator
    return c


def norm(c):
    return _norm(c)


cdef inline tuple _add_exp(tuple ka, tuple kb, Py_ssize_t n):
    cdef tuple t = PyTuple_New(n)
    cdef Py_ssize_t i
    cdef object e
    for i in range(n):
        e = <long>ka[i] + <long>kb[i]
        Py_INCREF(e)
        PyTuple_SET_ITEM(t, i, e)
    return t


def add(dict a, dict b):
    cdef dict r
    cdef object k, v, s
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
                r[k] = _norm(s)
            else:
                del r[k]
    return r


def sub(dict a, dict b):
    cdef dict r = dict(a)
    cdef object k, v, s
    for k, v in b.items():
        s = r.get(k)
        if s is None:
            r[k] = -v
        else:
            s = s - v
            if s:
                r[k] = _norm(s)
            else:
                del r[k]
    return r


def scale(dict a, c):
    if not c:
        return {}
    cdef dict r = {}
    cdef object k, v
    for k, v in a.items():
        r[k] = _norm(v * c)
    return r


def mul(dict a, dict b):
    cdef dict r = {}
    cdef tuple ka, kb, k
    cdef object va, vb, s
    cdef Py_ssize_t n
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return r
    for ka, va in a.items():
        n = len(ka)
        for kb, vb in b.items():
            k = _add_exp(ka, kb, n)
            s = r.get(k)
            if s is None:
                r[k] = va * vb
            else:
                r[k] = s + va * vb
    cdef dict out = {}
    for k, s in r.items():
        if s:
            out[k] = _norm(s)
    return out


def partial(dict a, Py_ssize_t idx):
    cdef dict r = {}
    cdef tuple k
    cdef object v
    cdef long e
    for k, v in a.items():
        e = k[idx]
        if e:
            r[k[:idx] + (e - 1,) + k[idx + 1:]] = _norm(v * e)
    return r


def evaluate(dict a, tuple point):
    cdef object total = 0
    cdef object t, v
    cdef tuple k
    cdef Py_ssize_t i, n = len(point)
    cdef long e
    for k, v in a.items():
        t = v
        for i in range(n):
            e = k[i]
            if e:
                t = t * point[i] ** e
        total = total + t
    return _norm(total)

"""Helpers for vectors and matrices of ``Poly``, stored as (nested) tuples.

A vector is a tuple of Polys; a matrix is a tuple of row tuples and acts on
coordinate columns from the left.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polyring import Poly, VarRing


def vzero(ring: VarRing, n: int) -> tuple:
    z = ring.zero()
    return (z,) * n


def unit(ring: VarRing, n: int, i: int) -> tuple:
    z, one = ring.zero(), ring.one()
    return tuple(one if j == i else z for j in range(n))


def mzero(ring: VarRing, rows: int, cols: int) -> tuple:
    return (vzero(ring, cols),) * rows


def identity(ring: VarRing, n: int) -> tuple:
    return tuple(unit(ring, n, i) for i in range(n))


def tadd(x, y):
    if isinstance(x, Poly):
        return x + y
    return tuple(tadd(a, b) for a, b in zip(x, y, strict=True))


def tsub(x, y):
    if isinstance(x, Poly):
        return x - y
    return tuple(tsub(a, b) for a, b in zip(x, y, strict=True))


def tneg(x):
    if isinstance(x, Poly):
        return -x
    return tuple(tneg(a) for a in x)


def tscale(f, x):
    """Multiply every entry of ``x`` by the scalar ``f`` (Poly or rational)."""
    if isinstance(x, Poly):
        return f * x if isinstance(f, Poly) else x * f
    return tuple(tscale(f, a) for a in x)


def tmap(fn, x):
    if isinstance(x, Poly):
        return fn(x)
    return tuple(tmap(fn, a) for a in x)


def tsum(items, zero):
    acc = zero
    for it in items:
        acc = tadd(acc, it)
    return acc


def is_zero(x) -> bool:
    if isinstance(x, Poly):
        return x.is_zero()
    return all(is_zero(a) for a in x)


def flat(x) -> list:
    if isinstance(x, Poly):
        return [x]
    out = []
    for a in x:
        out.extend(flat(a))
    return out


def first_nonzero(x):
    """Return ``(path, poly)`` of the first nonzero entry, or ``None``."""
    if isinstance(x, Poly):
        return ((), x) if x else None
    for i, a in enumerate(x):
        hit = first_nonzero(a)
        if hit is not None:
            return ((i,) + hit[0], hit[1])
    return None


def shape(x) -> tuple:
    if isinstance(x, Poly):
        return ()
    if not x:
        return (0,)
    return (len(x),) + shape(x[0])


def dot(u: Sequence[Poly], v: Sequence[Poly], ring: VarRing) -> Poly:
    acc = ring.zero()
    for a, b in zip(u, v, strict=True):
        if a and b:
            acc = acc + a * b
    return acc


def matvec(m, v, ring: VarRing) -> tuple:
    return tuple(dot(row, v, ring) for row in m)


def transpose(m, ncols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def transpose_to(m, rows: int, cols: int) -> tuple:
    """Transpose of a ``rows`` x ``cols`` matrix, correct for zero dimensions."""
    return tuple(tuple(m[r][c] for r in range(rows)) for c in range(cols))


def matmul(a, b, ring: VarRing, inner: int | None = None) -> tuple:
    """``a @ b``; ``inner`` must be given when it cannot be read off (empty ``a`` rows)."""
    rows = len(a)
    cols = len(b[0]) if b else None
    if cols is None:
        # b has zero rows: result is rows x (unknown) zeros; caller passes shapes
        raise ValueError("matmul with empty right factor needs explicit column count")
    bt = transpose(b)
    return tuple(tuple(dot(a[i], bt[j], ring) for j in range(cols)) for i in range(rows))


def mm(a, b, ring: VarRing, shape_out: tuple) -> tuple:
    """Matrix product with explicit output shape (robust to zero dimensions)."""
    r, c = shape_out
    if r == 0:
        return ()
    if c == 0:
        return ((),) * r
    if not b:
        return mzero(ring, r, c)
    return matmul(a, b, ring)


def scalar_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)

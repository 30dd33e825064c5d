"""Exact sparse multivariate polynomials over the rationals.

Every identity check in the package reduces to asking whether some ``Poly``
is zero, so arithmetic here is exact (``int``/``Fraction`` coefficients) and
the printed form is canonical.
"""
from __future__ import annotations

import itertools
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

if os.environ.get("DLALG_PURE_PYTHON") == "1":
    from . import _kernels_py as _k
else:
    try:
        from . import _kernels as _k
    except ImportError:  # extension not built
        from . import _kernels_py as _k

BACKEND = _k.BACKEND

__all__ = [
    "BACKEND",
    "ParseError",
    "Poly",
    "RingMismatch",
    "UnknownVariable",
    "VarRing",
    "nonzero_witness",
    "parse_expr",
]


class RingMismatch(ValueError):
    pass


class UnknownVariable(KeyError):
    def __init__(self, name: str, offset: Optional[int] = None):
        super().__init__(name)
        self.name = name
        self.offset = offset

    def __str__(self):
        where = f" at offset {self.offset}" if self.offset is not None else ""
        return f"unknown variable {self.name!r}{where}"


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


@dataclass(frozen=True)
class VarRing:
    """Polynomial ring Q[x1..xn, fiber vars].

    ``fiber_groups`` is a tuple of ``(tag, names)``; fiber variables carry
    fiber-weight 1 and follow the base variables in the variable order.
    """

    base_vars: tuple
    fiber_groups: tuple = ()

    def __post_init__(self):
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def euclidean(cls, n: int, prefix: str = "x") -> "VarRing":
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)))

    @property
    def names(self) -> tuple:
        return self.base_vars + tuple(v for _, vs in self.fiber_groups for v in vs)

    @property
    def nvars(self) -> int:
        return len(self.base_vars) + sum(len(vs) for _, vs in self.fiber_groups)

    @property
    def base_dim(self) -> int:
        return len(self.base_vars)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def fiber_vars(self, tag: Optional[str] = None) -> tuple:
        return tuple(v for t, vs in self.fiber_groups if tag is None or t == tag for v in vs)

    def with_fiber(self, tag: str, names: Sequence[str]) -> "VarRing":
        return VarRing(self.base_vars, self.fiber_groups + ((tag, tuple(names)),))

    def base_ring(self) -> "VarRing":
        return VarRing(self.base_vars) if self.fiber_groups else self

    def extends(self, other: "VarRing") -> bool:
        """True if ``other``'s variables are a prefix of ours."""
        return self.names[: other.nvars] == other.names

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = _k.norm(Fraction(c)) if not isinstance(c, int) else c
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name) -> "Poly":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def embed(self, p: "Poly") -> "Poly":
        """Pull a polynomial back along the projection onto ``p.ring``."""
        if p.ring is self or p.ring == self:
            return p
        if not self.extends(p.ring):
            raise RingMismatch(f"cannot embed {p.ring.names} into {self.names}")
        pad = (0,) * (self.nvars - p.ring.nvars)
        return Poly(self, {k + pad: v for k, v in p.terms.items()})

    def parse(self, text: str) -> "Poly":
        return parse_expr(text, self)


def _coerce_coeff(c):
    if isinstance(c, (int, Fraction)):
        return _k.norm(c) if isinstance(c, Fraction) else c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Poly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: VarRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def fiber_degree(self) -> int:
        nb = self.ring.base_dim
        return max((sum(k[nb:]) for k in self.terms), default=-1)

    def is_fiberwise_linear(self) -> bool:
        return self.fiber_degree() <= 1

    def is_pullback(self) -> bool:
        return self.fiber_degree() <= 0

    def constant_value(self):
        """The coefficient if the polynomial is constant, else ``None``."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (k, v), = self.terms.items()
            if not any(k):
                return v
        return None

    # arithmetic
    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is self.ring:
                return other
            if other.ring == self.ring:
                return other
            if self.ring.extends(other.ring):
                return self.ring.embed(other)
            raise RingMismatch(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
        return self.ring.const(_coerce_coeff(other))

    def _lift(self, other):
        # promote self when other lives on a larger ring
        if isinstance(other, Poly) and other.ring is not self.ring and other.ring != self.ring:
            if other.ring.extends(self.ring):
                return other.ring.embed(self)
        return self

    def __add__(self, other):
        s = self._lift(other)
        if s is not self:
            return s + other
        o = self._other(other)
        if not o.terms:
            return self
        if not self.terms:
            return o
        return Poly(self.ring, _k.add(self.terms, o.terms))

    __radd__ = __add__

    def __sub__(self, other):
        s = self._lift(other)
        if s is not self:
            return s - other
        o = self._other(other)
        if not o.terms:
            return self
        return Poly(self.ring, _k.sub(self.terms, o.terms))

    def __rsub__(self, other):
        return self._other(other) - self

    def __neg__(self):
        return Poly(self.ring, {k: -v for k, v in self.terms.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, _k.scale(self.terms, other))
        s = self._lift(other)
        if s is not self:
            return s * other
        o = self._other(other)
        if not self.terms or not o.terms:
            return Poly(self.ring, {})
        return Poly(self.ring, _k.mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def partial(self, var) -> "Poly":
        i = var if isinstance(var, int) else self.ring.index(var)
        if not 0 <= i < self.ring.nvars:
            raise UnknownVariable(str(var))
        return Poly(self.ring, _k.partial(self.terms, i))

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        if len(point) != self.ring.nvars:
            raise ValueError(f"expected {self.ring.nvars} coordinates, got {len(point)}")
        return _k.evaluate(self.terms, tuple(point))

    evaluate = __call__

    # comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                try:
                    return not (self - other).terms
                except RingMismatch:
                    return False
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # printing
    def sorted_terms(self) -> list:
        """Terms in graded-lex order: higher total degree first, then lex on variable index."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        out = []
        for k, c in self.sorted_terms():
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(k) if e
            )
            neg = c < 0
            a = -c if neg else c
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            if not out:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self):
        return f"Poly({str(self)!r})"


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            toks.append((ch, ch, m.start(3)))
        pos = m.end()
    toks.append(("eof", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: VarRing):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "eof" else repr(kind)
            got = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}", tok[2])
        self.i += 1
        return tok

    def expr(self) -> Poly:
        neg = False
        if self.peek()[0] in ("+", "-"):
            neg = self.take()[0] == "-"
        acc = self.term()
        if neg:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            n = self.take("int")[1]
            base = base ** n
        return base

    def atom(self) -> Poly:
        kind, val, off = self.peek()
        if kind == "int":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                den = self.take("int")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                return self.ring.const(Fraction(val, den[1]))
            return self.ring.const(val)
        if kind == "name":
            self.take()
            try:
                return self.ring.var(val)
            except UnknownVariable:
                raise UnknownVariable(val, off) from None
        if kind == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        got = "end of input" if kind == "eof" else repr(val)
        raise ParseError(f"unexpected {got}", off)


def parse_expr(text: str, ring: VarRing) -> Poly:
    """Parse ``text`` in the polynomial grammar into a canonical ``Poly``.

    Raises ``ParseError`` (with ``offset``) or ``UnknownVariable``.
    """
    p = _Parser(str(text), ring)
    out = p.expr()
    p.take("eof")
    return out


# ---------------------------------------------------------------------------
# witnesses

def _axis_values() -> Iterator[int]:
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def _shell(n: int, r: int) -> Iterator[tuple]:
    """Integer points of max-norm exactly ``r``, ordered lexicographically
    with the coordinate order 0, 1, -1, 2, -2, ..."""
    vals = list(itertools.islice(_axis_values(), 2 * r + 1))
    for pt in itertools.product(vals, repeat=n):
        if max((abs(v) for v in pt), default=0) == r:
            yield pt


def grid_points(n: int) -> Iterator[tuple]:
    if n == 0:
        yield ()
        return
    r = 0
    while True:
        yield from _shell(n, r)
        r += 1


def nonzero_witness(p: Poly):
    """``None`` if ``p`` is zero, else ``(point, value)`` with ``p(point) != 0``.

    Points are searched in increasing max-norm shells, so the result is
    reproducible. Terminates for any nonzero polynomial: a nonzero polynomial
    of degree d cannot vanish on the full grid {-d..d}^n.
    """
    if p.is_zero():
        return None
    for pt in grid_points(p.ring.nvars):
        v = p(pt)
        if v:
            return pt, v
    raise AssertionError("unreachable")  # pragma: no cover


def poly_sum(items: Iterable[Poly], ring: VarRing) -> Poly:
    acc = ring.zero()
    for p in items:
        acc = acc + p
    return acc

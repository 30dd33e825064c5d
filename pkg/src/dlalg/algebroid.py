"""Lie algebroids presented by a frame: polynomial anchors and structure functions.

Sections are tuples of ``Poly`` (coefficients in the frame).  Anchors act on
every variable of the ring, so the same class serves algebroids over a base
space and over the total space of a vector bundle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import linalg
from .polyring import Poly, RingMismatch, VarRing
from .report import Report

FRAME_NOTE = (
    "axioms evaluated on frame elements only; bracket and anchor are extended "
    "by bilinearity and the Leibniz rule, so frame-level vanishing of the "
    "Jacobiator and of the anchor defect implies it for all sections"
)


def as_poly(ring: VarRing, value) -> Poly:
    if isinstance(value, Poly):
        return ring.embed(value) if value.ring != ring else value
    if isinstance(value, str):
        return ring.parse(value)
    return ring.const(value)


class VectorField:
    """A derivation of the polynomial ring, stored by its values on the variables."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: VarRing, comps: Sequence[Poly]):
        if len(comps) != ring.nvars:
            raise ValueError(f"vector field needs {ring.nvars} components, got {len(comps)}")
        self.ring = ring
        self.comps = tuple(comps)

    @classmethod
    def zero(cls, ring: VarRing) -> "VectorField":
        return cls(ring, linalg.vzero(ring, ring.nvars))

    @classmethod
    def coordinate(cls, ring: VarRing, var) -> "VectorField":
        i = var if isinstance(var, int) else ring.index(var)
        return cls(ring, linalg.unit(ring, ring.nvars, i))

    def __call__(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            if self.ring.extends(f.ring):
                f = self.ring.embed(f)
            else:
                raise RingMismatch("vector field and function live on different rings")
        acc = self.ring.zero()
        for i, c in enumerate(self.comps):
            if c:
                d = f.partial(i)
                if d:
                    acc = acc + c * d
        return acc

    apply = __call__

    def bracket(self, other: "VectorField") -> "VectorField":
        return VectorField(
            self.ring, tuple(self(b) - other(a) for a, b in zip(self.comps, other.comps))
        )

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.ring, linalg.tadd(self.comps, other.comps))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.ring, linalg.tsub(self.comps, other.comps))

    def __neg__(self):
        return VectorField(self.ring, linalg.tneg(self.comps))

    def scale(self, f) -> "VectorField":
        return VectorField(self.ring, linalg.tscale(f, self.comps))

    def is_zero(self) -> bool:
        return linalg.is_zero(self.comps)

    def __eq__(self, other):
        return isinstance(other, VectorField) and linalg.is_zero(linalg.tsub(self.comps, other.comps))

    __hash__ = None

    def __repr__(self):
        parts = [f"({c})*d/d{n}" for c, n in zip(self.comps, self.ring.names) if c]
        return "VectorField(" + (" + ".join(parts) or "0") + ")"


@dataclass(frozen=True, eq=False)
class Algebroid:
    """Frame presentation of a Lie algebroid.

    ``anchor[i]`` lists the values of the vector field rho(e_i) on every ring
    variable; ``structure[i][j][l]`` is the coefficient of e_l in [e_i, e_j].
    Antisymmetry of ``structure`` is not enforced here: ``check_lie_algebroid``
    reports it, which matters for the core bracket of an unmatched pair.
    """

    ring: VarRing
    anchor: tuple
    structure: tuple
    name: str = ""
    labels: tuple = field(default=())

    @classmethod
    def build(cls, ring: VarRing, anchor, structure=None, name: str = "", labels=()) -> "Algebroid":
        """Coerce nested lists of Poly/str/int into a presentation.

        Anchor rows shorter than ``ring.nvars`` are padded with zeros, so a
        base-only anchor can be given over a fibered ring.
        """
        k = len(anchor)
        rows = []
        for row in anchor:
            vals = [as_poly(ring, v) for v in row]
            if len(vals) > ring.nvars:
                raise ValueError(f"anchor row has {len(vals)} entries, ring has {ring.nvars} variables")
            vals += [ring.zero()] * (ring.nvars - len(vals))
            rows.append(tuple(vals))
        if structure is None:
            st = tuple(tuple(linalg.vzero(ring, k) for _ in range(k)) for _ in range(k))
        else:
            st = tuple(
                tuple(tuple(as_poly(ring, v) for v in structure[i][j]) for j in range(k))
                for i in range(k)
            )
            if linalg.shape(st)[:3] != (k, k, k) and k:
                raise ValueError("structure must be rank x rank x rank")
        return cls(ring, tuple(rows), st, name, tuple(labels))

    @classmethod
    def tangent(cls, n_or_ring, name: str = "TM") -> "Algebroid":
        """The tangent bundle in the coordinate frame d/dx1..d/dxn."""
        ring = VarRing.euclidean(n_or_ring) if isinstance(n_or_ring, int) else n_or_ring
        n = ring.base_dim
        anchor = [linalg.unit(ring, ring.nvars, i) for i in range(n)]
        return cls.build(ring, anchor, name=name, labels=tuple(f"d/d{v}" for v in ring.base_vars))

    @property
    def rank(self) -> int:
        return len(self.anchor)

    def anchor_field(self, i: int) -> VectorField:
        return VectorField(self.ring, self.anchor[i])

    def rho(self, s: Sequence[Poly]) -> VectorField:
        """The vector field rho(s) for a section ``s``."""
        comps = [self.ring.zero()] * self.ring.nvars
        for i, si in enumerate(s):
            if si:
                for v, c in enumerate(self.anchor[i]):
                    if c:
                        comps[v] = comps[v] + si * c
        return VectorField(self.ring, comps)

    def frame(self, i: int) -> tuple:
        return linalg.unit(self.ring, self.rank, i)

    def zero_section(self) -> tuple:
        return linalg.vzero(self.ring, self.rank)

    def section(self, values) -> tuple:
        if len(values) != self.rank:
            raise ValueError(f"section needs {self.rank} components")
        return tuple(as_poly(self.ring, v) for v in values)

    def bracket(self, s, t) -> tuple:
        return bracket_sections(self, s, t)

    def anchor_apply(self, s, f) -> Poly:
        return anchor_apply(self, s, f)


def _check_section(A: Algebroid, s):
    if len(s) != A.rank:
        raise ValueError(f"section has {len(s)} components, algebroid rank is {A.rank}")
    for c in s:
        if c.ring != A.ring and not A.ring.extends(c.ring):
            raise RingMismatch("section coefficient outside the algebroid's ring")


def anchor_apply(A: Algebroid, s, f: Poly) -> Poly:
    _check_section(A, s)
    return A.rho(s)(f)


def bracket_sections(A: Algebroid, s, t) -> tuple:
    """[s, t] = sum s_i t_j [e_i, e_j] + rho(s)t - rho(t)s (componentwise)."""
    _check_section(A, s)
    _check_section(A, t)
    ring, k = A.ring, A.rank
    out = [ring.zero()] * k
    for i, si in enumerate(s):
        if not si:
            continue
        for j, tj in enumerate(t):
            if not tj:
                continue
            coeff = si * tj
            for l, c in enumerate(A.structure[i][j]):
                if c:
                    out[l] = out[l] + coeff * c
    rs, rt = A.rho(s), A.rho(t)
    for l in range(k):
        out[l] = out[l] + rs(t[l]) - rt(s[l])
    return tuple(out)


def jacobiator(A: Algebroid, s, t, u) -> tuple:
    br = lambda x, y: bracket_sections(A, x, y)  # noqa: E731
    return linalg.tadd(linalg.tadd(br(br(s, t), u), br(br(t, u), s)), br(br(u, s), t))


def check_lie_algebroid(A: Algebroid) -> Report:
    """Antisymmetry, Jacobi and anchor-morphism residuals on the frame."""
    rep = Report("lie-algebroid")
    rep.notes.append(FRAME_NOTE)
    k = A.rank
    for i in range(k):
        for j in range(i, k):
            rep.add("antisymmetry", (i, j), linalg.tadd(A.structure[i][j], A.structure[j][i]))
    for i, j, l in itertools.combinations(range(k), 3):
        rep.add("jacobi", (i, j, l), jacobiator(A, A.frame(i), A.frame(j), A.frame(l)))
    for i, j in itertools.combinations(range(k), 2):
        lhs = A.anchor_field(i).bracket(A.anchor_field(j))
        rep.add("anchor", (i, j), (lhs - A.rho(A.structure[i][j])).comps)
    return rep


def pair(alpha, s, ring: VarRing) -> Poly:
    return linalg.dot(alpha, s, ring)


def lie_derivative_dual(A: Algebroid, a, alpha) -> tuple:
    """The section of A* with <L_a alpha, e_i> = rho(a)<alpha, e_i> - <alpha, [a, e_i]>."""
    ra = A.rho(a)
    return tuple(
        ra(alpha[i]) - pair(alpha, bracket_sections(A, a, A.frame(i)), A.ring)
        for i in range(A.rank)
    )


class AForm:
    """An E-valued p-form on A, stored on strictly increasing frame indices.

    Values are tuples of ``Poly`` (coordinates in a frame of E, flattened if E
    is itself a tensor bundle).
    """

    __slots__ = ("A", "degree", "rank", "values")

    def __init__(self, A: Algebroid, degree: int, rank: int, values: dict):
        self.A = A
        self.degree = degree
        self.rank = rank
        self.values = values

    @classmethod
    def from_function(cls, A: Algebroid, degree: int, rank: int, fn: Callable) -> "AForm":
        vals = {I: tuple(fn(*I)) for I in itertools.combinations(range(A.rank), degree)}
        return cls(A, degree, rank, vals)

    @classmethod
    def zero(cls, A: Algebroid, degree: int, rank: int) -> "AForm":
        return cls.from_function(A, degree, rank, lambda *I: linalg.vzero(A.ring, rank))

    def on_frame(self, idx: Sequence[int]) -> tuple:
        """Value on frame elements in any order (sign from sorting, zero on repeats)."""
        if len(set(idx)) < len(idx):
            return linalg.vzero(self.A.ring, self.rank)
        order = sorted(range(len(idx)), key=lambda p: idx[p])
        sign = _perm_sign(order)
        v = self.values[tuple(idx[p] for p in order)]
        return v if sign > 0 else linalg.tneg(v)

    def on_sections(self, sections: Sequence) -> tuple:
        """Multilinear evaluation on arbitrary sections."""
        ring = self.A.ring
        acc = linalg.vzero(ring, self.rank)
        supports = [[(i, c) for i, c in enumerate(s) if c] for s in sections]
        for combo in itertools.product(*supports):
            idx = [i for i, _ in combo]
            if len(set(idx)) < len(idx):
                continue
            coeff = ring.one()
            for _, c in combo:
                coeff = coeff * c
            acc = linalg.tadd(acc, linalg.tscale(coeff, self.on_frame(idx)))
        return acc

    def is_zero(self) -> bool:
        return all(linalg.is_zero(v) for v in self.values.values())

    def __sub__(self, other: "AForm") -> "AForm":
        return AForm(self.A, self.degree, self.rank,
                     {I: linalg.tsub(v, other.values[I]) for I, v in self.values.items()})


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def koszul_differential(A: Algebroid, conn, omega: AForm) -> AForm:
    """d_conn omega on frame tuples via the Koszul formula.

    ``conn`` is anything with ``apply(a, v)`` for sections a of A and values
    v of rank ``omega.rank``; ``None`` means the trivial bundle with the
    anchor action, giving the algebroid differential d_A.
    """
    if omega.A is not A and omega.A.rank != A.rank:
        raise ValueError("form and algebroid ranks differ")
    ring = A.ring
    if conn is None:
        act = lambda a, v: tuple(A.rho(a)(c) for c in v)  # noqa: E731
    else:
        if getattr(conn, "rank", omega.rank) != omega.rank:
            raise ValueError("connection rank does not match the form's value rank")
        act = conn.apply
    p = omega.degree

    def value(*I):
        acc = linalg.vzero(ring, omega.rank)
        for s, t in itertools.combinations(range(p + 1), 2):
            rest = [I[q] for q in range(p + 1) if q not in (s, t)]
            br = A.structure[I[s]][I[t]]
            term = linalg.vzero(ring, omega.rank)
            for l, c in enumerate(br):
                if c:
                    term = linalg.tadd(term, linalg.tscale(c, omega.on_frame([l] + rest)))
            acc = linalg.tadd(acc, term) if (s + t) % 2 == 0 else linalg.tsub(acc, term)
        for s in range(p + 1):
            rest = [I[q] for q in range(p + 1) if q != s]
            term = act(A.frame(I[s]), omega.on_frame(rest))
            acc = linalg.tadd(acc, term) if s % 2 == 0 else linalg.tsub(acc, term)
        return acc

    return AForm.from_function(A, p + 1, omega.rank, value)


def function_form(A: Algebroid, f: Poly) -> AForm:
    """A function seen as a 0-form with values in the trivial line bundle."""
    return AForm(A, 0, 1, {(): (as_poly(A.ring, f),)})

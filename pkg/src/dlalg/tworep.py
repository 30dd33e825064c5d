"""2-term representations up to homotopy (d: E0 -> E1, nabla0, nabla1, R)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import linalg
from .algebroid import AForm, Algebroid, as_poly, koszul_differential
from .connection import (
    Conn,
    conn_apply,
    curvature,
    dual_connection,
    hom_apply,
    induced_connections,
    matrix_form,
    unflatten_matrix,
)
from .report import Report


class NotVerified(ValueError):
    """Raised when an operation requires a valid 2-representation."""


@dataclass(frozen=True, eq=False)
class TwoRep:
    """``partial`` is r1 x r0; ``R[(i, j)]`` (i < j) is the r0 x r1 matrix of R(e_i, e_j)."""

    algebroid: Algebroid
    r0: int
    r1: int
    partial: tuple
    conn0: Conn
    conn1: Conn
    R: dict
    name: str = ""

    def __post_init__(self):
        A = self.algebroid
        if self.conn0.rank != self.r0 or self.conn1.rank != self.r1:
            raise ValueError("connection ranks do not match E0/E1")
        for c in (self.conn0, self.conn1):
            if c.algebroid.rank != A.rank or c.algebroid.ring != A.ring:
                raise ValueError("connections must act through the 2-representation's algebroid")
        if len(self.partial) != self.r1 or any(len(row) != self.r0 for row in self.partial):
            raise ValueError(f"partial must be {self.r1} x {self.r0}")
        for (i, j), m in self.R.items():
            if not i < j or len(m) != self.r0 or any(len(row) != self.r1 for row in m):
                raise ValueError(f"R entry {(i, j)} must be an {self.r0} x {self.r1} matrix on i < j")

    @classmethod
    def build(cls, A: Algebroid, partial, conn0: Conn, conn1: Conn, R=None, name: str = "") -> "TwoRep":
        ring = A.ring
        r0, r1 = conn0.rank, conn1.rank
        part = tuple(tuple(as_poly(ring, v) for v in row) for row in partial)
        if r1 and not part:
            part = linalg.mzero(ring, r1, r0)
        mats = {}
        for i, j in itertools.combinations(range(A.rank), 2):
            m = (R or {}).get((i, j))
            if m is None:
                mats[(i, j)] = linalg.mzero(ring, r0, r1)
            else:
                mats[(i, j)] = tuple(tuple(as_poly(ring, v) for v in row) for row in m)
        return cls(A, r0, r1, part, conn0, conn1, mats, name)

    @property
    def ring(self):
        return self.algebroid.ring

    def R_on(self, a1, a2) -> tuple:
        """R(a1, a2) for arbitrary sections, by bilinearity and antisymmetry."""
        ring = self.ring
        acc = linalg.mzero(ring, self.r0, self.r1)
        for (i, j), m in self.R.items():
            w = a1[i] * a2[j] - a1[j] * a2[i]
            if w:
                acc = linalg.tadd(acc, linalg.tscale(w, m))
        return acc

    def R_frame(self, i: int, j: int) -> tuple:
        if i == j:
            return linalg.mzero(self.ring, self.r0, self.r1)
        if i < j:
            return self.R[(i, j)]
        return linalg.tneg(self.R[(j, i)])

    def d(self, e0) -> tuple:
        return linalg.matvec(self.partial, e0, self.ring)

    def R_form(self) -> AForm:
        return matrix_form(self.algebroid, self.R, self.r0, self.r1)


@dataclass(frozen=True)
class SplittingChange:
    """phi[i][b][c]: Phi(e_i) in Hom(E1, E0) sends f1_b to sum_c phi[i][b][c] f0_c."""

    phi: tuple

    @classmethod
    def build(cls, t: TwoRep, phi) -> "SplittingChange":
        ring = t.ring
        data = tuple(tuple(tuple(as_poly(ring, v) for v in row) for row in m) for m in phi)
        if linalg.shape(data)[:1] != (t.algebroid.rank,) and t.algebroid.rank:
            raise ValueError("splitting change must be indexed by the acting algebroid's frame")
        for m in data:
            if len(m) != t.r1 or any(len(row) != t.r0 for row in m):
                raise ValueError(f"each Phi(e_i) must be {t.r1} x {t.r0} (indexed [b][c])")
        return cls(data)

    def matrix(self, i: int, r0: int, r1: int) -> tuple:
        """Phi(e_i) as an r0 x r1 matrix acting on E1 coordinates."""
        return linalg.transpose_to(self.phi[i], r1, r0)

    def __neg__(self):
        return SplittingChange(linalg.tneg(self.phi))


def _hom_conn(t: TwoRep) -> Conn:
    return induced_connections(t.conn1, t.conn0)["hom"]


def validate_tworep(t: TwoRep) -> Report:
    """The four defining identities of a 2-representation, on frame tuples."""
    A, ring = t.algebroid, t.ring
    rep = Report("tworep")
    k = A.rank
    for i in range(k):
        a = A.frame(i)
        cols = []
        for m in range(t.r0):
            e = linalg.unit(ring, t.r0, m)
            cols.append(linalg.tsub(t.d(conn_apply(t.conn0, a, e)), conn_apply(t.conn1, a, t.d(e))))
        rep.add("d-intertwines", (i,), tuple(cols))
    R0, R1 = curvature(t.conn0), curvature(t.conn1)
    for i, j in itertools.combinations(range(k), 2):
        Rij = t.R[(i, j)]
        rep.add("curvature-E0", (i, j),
                linalg.tsub(R0[(i, j)], linalg.mm(Rij, t.partial, ring, (t.r0, t.r0))))
    for i, j in itertools.combinations(range(k), 2):
        Rij = t.R[(i, j)]
        rep.add("curvature-E1", (i, j),
                linalg.tsub(R1[(i, j)], linalg.mm(t.partial, Rij, ring, (t.r1, t.r1))))
    dR = koszul_differential(A, _hom_conn(t), t.R_form())
    for I, v in dR.values.items():
        rep.add("R-closed", I, unflatten_matrix(v, t.r0, t.r1))
    return rep


def is_verified(t: TwoRep) -> bool:
    return validate_tworep(t).passed


# -- total operator on Omega(A, E0 + E1) ------------------------------------

def _shuffle_sign(chosen: tuple, total: int) -> int:
    """Sign of the permutation moving positions ``chosen`` (increasing) to the front."""
    moves = sum(p - n for n, p in enumerate(chosen))
    return -1 if moves % 2 else 1


def _wedge_matrix_form(A: Algebroid, K: AForm, eta: AForm, r_out: int, r_in: int) -> AForm:
    """(K ^ eta) for a Hom(E_in, E_out)-valued 2-form K and an E_in-valued form eta."""
    ring = A.ring
    p = eta.degree

    def value(*I):
        acc = linalg.vzero(ring, r_out)
        for pos in itertools.combinations(range(p + 2), 2):
            rest = [I[q] for q in range(p + 2) if q not in pos]
            m = unflatten_matrix(K.on_frame([I[pos[0]], I[pos[1]]]), r_out, r_in)
            v = linalg.matvec(m, eta.on_frame(rest), ring) if r_in else linalg.vzero(ring, r_out)
            acc = linalg.tadd(acc, v) if _shuffle_sign(pos, p + 2) > 0 else linalg.tsub(acc, v)
        return acc

    return AForm.from_function(A, p + 2, r_out, value)


def _map_form(A: Algebroid, m, omega: AForm, r_out: int, sign: int = 1) -> AForm:
    ring = A.ring
    vals = {}
    for I, v in omega.values.items():
        w = linalg.matvec(m, v, ring) if omega.rank else linalg.vzero(ring, r_out)
        vals[I] = w if sign > 0 else linalg.tneg(w)
    return AForm(A, omega.degree, r_out, vals)


class _Graded:
    """A form in Omega(A, E0) + Omega(A, E1), bucketed by (bundle, form degree)."""

    def __init__(self, A: Algebroid, r0: int, r1: int):
        self.A, self.r0, self.r1 = A, r0, r1
        self.parts: dict = {}

    def add(self, which: int, form: AForm):
        key = (which, form.degree)
        if key in self.parts:
            old = self.parts[key]
            self.parts[key] = AForm(self.A, form.degree, form.rank,
                                    {I: linalg.tadd(v, old.values[I]) for I, v in form.values.items()})
        else:
            self.parts[key] = form


def _apply_total(t: TwoRep, g: _Graded, K: AForm) -> _Graded:
    A = t.algebroid
    out = _Graded(A, t.r0, t.r1)
    for (which, p), form in g.parts.items():
        sign = -1 if p % 2 else 1
        if which == 0:
            out.add(1, _map_form(A, t.partial, form, t.r1, sign))
            out.add(0, koszul_differential(A, t.conn0, form))
        else:
            out.add(1, koszul_differential(A, t.conn1, form))
            w = _wedge_matrix_form(A, K, form, t.r0, t.r1)
            out.add(0, w if sign > 0 else AForm(A, w.degree, w.rank,
                                                {I: linalg.tneg(v) for I, v in w.values.items()}))
    return out


def structure_operator_check(t: TwoRep) -> Report:
    """D^2 = 0 for D = (-1)^p d + d_nabla0 + d_nabla1 - R ^ (-), on the decided check set.

    Check set: frame sections of E0 and E1 (0-forms) and eps^i (x) e for
    every dual-frame element eps^i of A* and frame element e of E0, E1.
    Forms above the top degree rank(A) vanish identically.
    """
    A, ring = t.algebroid, t.ring
    rep = Report("structure-operator")
    rep.notes.append("D on E0-valued p-forms: (-1)^p d(omega) + d_nabla0(omega); "
                     "on E1-valued p-forms: d_nabla1(eta) + (-1)^p K ^ eta with K = -R")
    K = t.R_form()
    K = AForm(A, 2, K.rank, {I: linalg.tneg(v) for I, v in K.values.items()})
    inputs = []
    for which, r in ((0, t.r0), (1, t.r1)):
        for m in range(r):
            inputs.append((which, 0, None, m, AForm(A, 0, r, {(): linalg.unit(ring, r, m)})))
        for i in range(A.rank):
            for m in range(r):
                vals = {(l,): (linalg.unit(ring, r, m) if l == i else linalg.vzero(ring, r))
                        for l in range(A.rank)}
                inputs.append((which, 1, i, m, AForm(A, 1, r, vals)))
    for which, deg, i, m, form in inputs:
        g = _Graded(A, t.r0, t.r1)
        g.add(which, form)
        dd = _apply_total(t, _apply_total(t, g, K), K)
        label = f"D2-E{which}-deg{deg}"
        idx = (m,) if i is None else (i, m)
        for (w2, p2), f2 in sorted(dd.parts.items()):
            for I, v in sorted(f2.values.items()):
                rep.add(label, idx + (f"E{w2}",) + I, v)
    return rep


# -- dual and change of splitting -------------------------------------------

def dual_tworep(t: TwoRep, check: bool = True) -> TwoRep:
    """(d^T: E1* -> E0*, (nabla1)*, (nabla0)*, -R^T)."""
    if check and not is_verified(t):
        raise NotVerified("dual_tworep needs a valid 2-representation (pass check=False to skip)")
    part = linalg.transpose_to(t.partial, t.r1, t.r0)
    R = {ij: linalg.tneg(linalg.transpose_to(m, t.r0, t.r1)) for ij, m in t.R.items()}
    name = t.name + "*" if t.name else ""
    return TwoRep(t.algebroid, t.r1, t.r0, part, dual_connection(t.conn1), dual_connection(t.conn0), R, name)


def change_splitting(t: TwoRep, change: SplittingChange) -> TwoRep:
    """Transform (nabla0, nabla1, R) under a change of linear splitting by Phi."""
    A, ring = t.algebroid, t.ring
    r0, r1 = t.r0, t.r1
    if len(change.phi) != A.rank:
        raise ValueError("splitting change has the wrong number of frame entries")
    for m in change.phi:
        if len(m) != r1 or any(len(row) != r0 for row in m):
            raise ValueError(f"each Phi(e_i) must be {r1} x {r0}")
    Phi = [change.matrix(i, r0, r1) for i in range(A.rank)]
    new1, new0 = [], []
    for i in range(A.rank):
        dP = linalg.mm(t.partial, Phi[i], ring, (r1, r1))  # r1 x r1
        Pd = linalg.mm(Phi[i], t.partial, ring, (r0, r0))  # r0 x r0
        new1.append(tuple(tuple(t.conn1.christoffel[i][j][l] + dP[l][j] for l in range(r1)) for j in range(r1)))
        new0.append(tuple(tuple(t.conn0.christoffel[i][j][l] + Pd[l][j] for l in range(r0)) for j in range(r0)))
    conn1 = Conn(A, r1, tuple(new1), t.conn1.name)
    conn0 = Conn(A, r0, tuple(new0), t.conn0.name)

    def phi_on(a):
        acc = linalg.mzero(ring, r0, r1)
        for i, ai in enumerate(a):
            if ai:
                acc = linalg.tadd(acc, linalg.tscale(ai, Phi[i]))
        return acc

    R = {}
    for i, j in itertools.combinations(range(A.rank), 2):
        ei, ej = A.frame(i), A.frame(j)
        dPhi = linalg.tsub(
            linalg.tsub(hom_apply(t.conn1, t.conn0, ei, Phi[j]), hom_apply(t.conn1, t.conn0, ej, Phi[i])),
            phi_on(A.structure[i][j]),
        )
        quad = linalg.tsub(
            linalg.mm(Phi[i], linalg.mm(t.partial, Phi[j], ring, (r1, r1)), ring, (r0, r1)),
            linalg.mm(Phi[j], linalg.mm(t.partial, Phi[i], ring, (r1, r1)), ring, (r0, r1)),
        )
        R[(i, j)] = linalg.tadd(linalg.tadd(t.R[(i, j)], dPhi), quad)
    return TwoRep(A, r0, r1, t.partial, conn0, conn1, R, t.name)


def same_tworep(s: TwoRep, t: TwoRep) -> bool:
    """Literal equality of all data."""
    if (s.r0, s.r1) != (t.r0, t.r1):
        return False
    pairs = [(s.partial, t.partial), (s.conn0.christoffel, t.conn0.christoffel),
             (s.conn1.christoffel, t.conn1.christoffel)]
    pairs += [(s.R[k], t.R[k]) for k in s.R]
    return all(linalg.is_zero(linalg.tsub(x, y)) for x, y in pairs)

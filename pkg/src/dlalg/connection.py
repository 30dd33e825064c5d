"""A-connections given by Christoffel data, their curvature, duals and induced connections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebroid import Algebroid, AForm, as_poly, bracket_sections
from .polyring import Poly


@dataclass(frozen=True, eq=False)
class Conn:
    """nabla_{e_i} f_j = sum_l christoffel[i][j][l] f_l."""

    algebroid: Algebroid
    rank: int
    christoffel: tuple
    name: str = ""

    @classmethod
    def build(cls, A: Algebroid, rank: int, christoffel=None, name: str = "") -> "Conn":
        ring = A.ring
        if christoffel is None:
            data = tuple(tuple(linalg.vzero(ring, rank) for _ in range(rank)) for _ in range(A.rank))
        else:
            if len(christoffel) != A.rank or any(len(m) != rank for m in christoffel):
                raise ValueError(f"christoffel data must be {A.rank} x {rank} x {rank}")
            data = tuple(
                tuple(tuple(as_poly(ring, v) for v in row) for row in m) for m in christoffel
            )
            if any(len(row) != rank for m in data for row in m):
                raise ValueError(f"christoffel data must be {A.rank} x {rank} x {rank}")
        return cls(A, rank, data, name)

    @classmethod
    def flat(cls, A: Algebroid, rank: int, name: str = "") -> "Conn":
        return cls.build(A, rank, None, name)

    @property
    def ring(self):
        return self.algebroid.ring

    def frame_matrix(self, i: int) -> tuple:
        """G_i with G_i[l][j] = christoffel[i][j][l], so nabla_{e_i} acts as rho(e_i) + G_i."""
        r = self.rank
        g = self.christoffel[i]
        return tuple(tuple(g[j][l] for j in range(r)) for l in range(r))

    def matrix(self, a: Sequence[Poly]) -> tuple:
        """sum_i a_i G_i: the tensorial part of nabla_a in the frame."""
        ring, r = self.ring, self.rank
        acc = linalg.mzero(ring, r, r)
        for i, ai in enumerate(a):
            if ai:
                acc = linalg.tadd(acc, linalg.tscale(ai, self.frame_matrix(i)))
        return acc

    def apply(self, a, e) -> tuple:
        return conn_apply(self, a, e)

    def is_flat_data(self) -> bool:
        return linalg.is_zero(self.christoffel)


def conn_apply(conn: Conn, a, e) -> tuple:
    A = conn.algebroid
    if len(a) != A.rank:
        raise ValueError(f"section of A has {len(a)} components, expected {A.rank}")
    if len(e) != conn.rank:
        raise ValueError(f"section of E has {len(e)} components, expected {conn.rank}")
    rho = A.rho(a)
    tensorial = linalg.matvec(conn.matrix(a), e, conn.ring)
    return tuple(rho(ej) + tj for ej, tj in zip(e, tensorial))


def curvature_on(conn: Conn, a1, a2, e) -> tuple:
    """R(a1, a2)e = nabla_a1 nabla_a2 e - nabla_a2 nabla_a1 e - nabla_[a1,a2] e."""
    A = conn.algebroid
    t1 = conn_apply(conn, a1, conn_apply(conn, a2, e))
    t2 = conn_apply(conn, a2, conn_apply(conn, a1, e))
    t3 = conn_apply(conn, bracket_sections(A, a1, a2), e)
    return linalg.tsub(linalg.tsub(t1, t2), t3)


def curvature(conn: Conn) -> dict:
    """Curvature on frame pairs i < j, as r x r matrices (column m is R(e_i,e_j) f_m)."""
    A, r = conn.algebroid, conn.rank
    out = {}
    for i, j in itertools.combinations(range(A.rank), 2):
        cols = [curvature_on(conn, A.frame(i), A.frame(j), linalg.unit(conn.ring, r, m)) for m in range(r)]
        out[(i, j)] = linalg.transpose_to(cols, r, r)
    return out


def dual_connection(conn: Conn) -> Conn:
    """<nabla*_a eps, e> = rho(a)<eps, e> - <eps, nabla_a e>, i.e. Gamma*[i][j][l] = -Gamma[i][l][j]."""
    r = conn.rank
    data = tuple(
        tuple(tuple(-conn.christoffel[i][l][j] for l in range(r)) for j in range(r))
        for i in range(conn.algebroid.rank)
    )
    name = conn.name + "*" if conn.name else ""
    return Conn(conn.algebroid, r, data, name)


def _from_basis_action(A: Algebroid, rank: int, act, name: str = "") -> Conn:
    """Christoffel symbols read off by applying ``act(i, basis_vector)`` to the constant frame."""
    ring = A.ring
    data = []
    for i in range(A.rank):
        data.append(tuple(tuple(act(i, linalg.unit(ring, rank, j))) for j in range(rank)))
    return Conn(A, rank, tuple(data), name)


def hom_index(p: int, q: int, r1: int) -> int:
    """Flat index of the matrix unit sending f1_q to f0_p in Hom(E1, E0)."""
    return p * r1 + q


def flatten_matrix(m, r0: int, r1: int) -> tuple:
    return tuple(m[p][q] for p in range(r0) for q in range(r1))


def unflatten_matrix(v, r0: int, r1: int) -> tuple:
    return tuple(tuple(v[p * r1 + q] for q in range(r1)) for p in range(r0))


def wedge_pairs(r: int) -> list:
    return list(itertools.combinations(range(r), 2))


def wedge_index(s: int, t: int, l: int, r1: int, r0: int) -> int:
    return wedge_pairs(r1).index((s, t)) * r0 + l


def wedge_eval(T, u, v, r1: int, r0: int, ring) -> tuple:
    """T(u, v) for T in the flattened frame of wedge^2 E1* (x) E0."""
    out = [ring.zero()] * r0
    for n, (s, t) in enumerate(wedge_pairs(r1)):
        w = u[s] * v[t] - u[t] * v[s]
        if w:
            for l in range(r0):
                c = T[n * r0 + l]
                if c:
                    out[l] = out[l] + w * c
    return tuple(out)


def induced_connections(conn1: Conn, conn0: Conn) -> dict:
    """Connections induced on Hom(E1, E0) and on wedge^2 E1* (x) E0.

    Hom elements are flattened row-major (``hom_index``); wedge elements by
    pairs s < t of the E1 frame, then the E0 index (``wedge_index``).
    """
    A = conn1.algebroid
    if conn0.algebroid is not A and conn0.algebroid.rank != A.rank:
        raise ValueError("both connections must act through the same algebroid")
    r1, r0 = conn1.rank, conn0.rank
    ring = A.ring

    def hom_act(i, vec):
        phi = unflatten_matrix(vec, r0, r1)
        g0, g1 = conn0.frame_matrix(i), conn1.frame_matrix(i)
        res = linalg.tsub(
            linalg.mm(g0, phi, ring, (r0, r1)), linalg.mm(phi, g1, ring, (r0, r1))
        )
        return flatten_matrix(res, r0, r1)

    def wedge_act(i, vec):
        g0, g1 = conn0.frame_matrix(i), conn1.frame_matrix(i)
        out = []
        for s, t in wedge_pairs(r1):
            es, et = linalg.unit(ring, r1, s), linalg.unit(ring, r1, t)
            val = linalg.matvec(g0, wedge_eval(vec, es, et, r1, r0, ring), ring) if r0 else ()
            val = linalg.tsub(val, wedge_eval(vec, linalg.matvec(g1, es, ring), et, r1, r0, ring))
            val = linalg.tsub(val, wedge_eval(vec, es, linalg.matvec(g1, et, ring), r1, r0, ring))
            out.extend(val)
        return tuple(out)

    nw = len(wedge_pairs(r1)) * r0
    return {
        "hom": _from_basis_action(A, r0 * r1, hom_act, "hom"),
        "wedge2dual_tensor": _from_basis_action(A, nw, wedge_act, "wedge"),
    }


def hom_apply(conn1: Conn, conn0: Conn, a, phi) -> tuple:
    """nabla^Hom_a phi = nabla0_a o phi - phi o nabla1_a, computed column by column."""
    ring = conn1.ring
    r0, r1 = conn0.rank, conn1.rank
    cols = []
    for q in range(r1):
        col = tuple(phi[p][q] for p in range(r0))
        first = conn_apply(conn0, a, col)
        image = conn_apply(conn1, a, linalg.unit(ring, r1, q))
        second = linalg.matvec(phi, image, ring) if r1 else linalg.vzero(ring, r0)
        cols.append(linalg.tsub(first, second))
    return linalg.transpose_to(cols, r1, r0)


def matrix_form(A: Algebroid, mats: dict, r0: int, r1: int) -> AForm:
    """A Hom(E1,E0)-valued 2-form from matrices on pairs i < j, flattened."""
    vals = {I: flatten_matrix(m, r0, r1) for I, m in mats.items()}
    return AForm(A, 2, r0 * r1, vals)

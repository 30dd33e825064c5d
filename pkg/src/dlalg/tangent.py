"""The tangent double of a Lie algebroid: basic connections, basic curvature and the matched pair.

Role mapping into a matched pair: the side called "A" there is TM (coordinate
frame, identity anchor, zero structure), the side "B" is the input algebroid,
and the core C is again the input algebroid with d_B = Id and d_A = rho.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .algebroid import Algebroid, bracket_sections
from .connection import Conn, conn_apply, curvature
from .matched import MatchedPair
from .tworep import TwoRep


@dataclass(frozen=True, eq=False)
class TangentInput:
    """An algebroid A over R^n with a TM-connection on A (christoffel[j][i][l]: nabla_{d/dx_j} e_i)."""

    A: Algebroid
    conn: Conn

    def __post_init__(self):
        if self.conn.rank != self.A.rank:
            raise ValueError("the TM-connection must act on A")
        if self.conn.algebroid.rank != self.A.ring.base_dim:
            raise ValueError("the connection must act through the coordinate frame of TM")

    @classmethod
    def build(cls, A: Algebroid, christoffel=None) -> "TangentInput":
        TM = Algebroid.tangent(A.ring)
        return cls(A, Conn.build(TM, A.rank, christoffel, name="nabla"))

    @property
    def TM(self) -> Algebroid:
        return self.conn.algebroid

    def rho_as_vector(self, a) -> tuple:
        """rho(a) as a section of TM in the coordinate frame."""
        return self.A.rho(a).comps[: self.A.ring.base_dim]

    def nabla(self, X, a) -> tuple:
        return conn_apply(self.conn, X, a)


def _basic_tm(inp: TangentInput, a, X) -> tuple:
    """[rho(a), X] + rho(nabla_X a) as a section of TM."""
    TM = inp.TM
    return linalg.tadd(bracket_sections(TM, inp.rho_as_vector(a), X), inp.rho_as_vector(inp.nabla(X, a)))


def _basic_a(inp: TangentInput, a1, a2) -> tuple:
    """[a1, a2] + nabla_{rho(a2)} a1."""
    return linalg.tadd(bracket_sections(inp.A, a1, a2), inp.nabla(inp.rho_as_vector(a2), a1))


def basic_connections(inp: TangentInput) -> tuple:
    """(nabla^bas on TM, nabla^bas on A), both A-connections, read off on the frames."""
    A, TM = inp.A, inp.TM
    n, k = TM.rank, A.rank
    tm = tuple(tuple(_basic_tm(inp, A.frame(i), TM.frame(j)) for j in range(n)) for i in range(k))
    aa = tuple(tuple(_basic_a(inp, A.frame(i), A.frame(j)) for j in range(k)) for i in range(k))
    return Conn(A, n, tm, "bas_TM"), Conn(A, k, aa, "bas_A")


def basic_curvature(inp: TangentInput) -> dict:
    """R^bas(e_i, e_j) for i < j as k x n matrices (Hom(TM, A))."""
    A, TM = inp.A, inp.TM
    bas_tm, _ = basic_connections(inp)
    nab = inp.nabla
    out = {}
    for i, j in itertools.combinations(range(A.rank), 2):
        a1, a2 = A.frame(i), A.frame(j)
        cols = []
        for q in range(TM.rank):
            X = TM.frame(q)
            v = linalg.tneg(nab(X, bracket_sections(A, a1, a2)))
            v = linalg.tadd(v, bracket_sections(A, nab(X, a1), a2))
            v = linalg.tadd(v, bracket_sections(A, a1, nab(X, a2)))
            v = linalg.tadd(v, nab(conn_apply(bas_tm, a2, X), a1))
            v = linalg.tsub(v, nab(conn_apply(bas_tm, a1, X), a2))
            cols.append(v)
        out[(i, j)] = linalg.transpose_to(cols, TM.rank, A.rank)
    return out


def tangent_prolongation_rep(inp: TangentInput) -> TwoRep:
    """(nabla^bas_A, nabla^bas_TM, R^bas): A acting on rho: A -> TM."""
    A = inp.A
    n = A.ring.base_dim
    bas_tm, bas_a = basic_connections(inp)
    rho = tuple(tuple(A.anchor[m][l] for m in range(A.rank)) for l in range(n))
    return TwoRep(A, A.rank, n, rho, bas_a, bas_tm, basic_curvature(inp), "tangent-prolongation")


def tangent_rep(inp: TangentInput) -> TwoRep:
    """(nabla, nabla, R_nabla): TM acting on Id: A -> A."""
    k = inp.A.rank
    return TwoRep(inp.TM, k, k, linalg.identity(inp.A.ring, k), inp.conn, inp.conn,
                  curvature(inp.conn), "tangent")


def tangent_double_matched_pair(inp: TangentInput) -> MatchedPair:
    return MatchedPair(inp.TM, inp.A, inp.A.rank, tangent_rep(inp), tangent_prolongation_rep(inp),
                       name="tangent-double")

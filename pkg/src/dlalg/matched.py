"""Matched pairs of 2-representations, the core algebroid and the linear Poisson structure on C*.

Naming: A acts on d_B: C -> B through repA = (nabla^AC, nabla^AB, R_A) and B
acts on d_A: C -> A through repB = (nabla^BC, nabla^BA, R_B).  In each TwoRep,
E0 is the core C and E1 is the other side.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .algebroid import AForm, Algebroid, bracket_sections, koszul_differential
from .connection import Conn, conn_apply, induced_connections, wedge_pairs
from .polyring import Poly, VarRing
from .report import Report
from .tworep import SplittingChange, TwoRep, change_splitting

CONDITIONS = ("M1", "M2", "M3", "M4", "M5", "M6", "M7", "M8", "M9")

TENSORIALITY_NOTE = (
    "conditions are evaluated on frame elements; each residual is tensorial in "
    "its section arguments once (M1) holds, so frame vanishing covers all sections"
)
M9_NOTE = (
    "(M9) compares (d R_B)(a1,a2)(b_s,b_t) with (d R_A)(b_s,b_t)(a1,a2), where "
    "R_B(a)(b_s,b_t) := R_B(b_s,b_t)a and R_A(b)(a1,a2) := R_A(a1,a2)b, and each d "
    "uses the connection induced on wedge^2 (other side)* (x) C"
)


@dataclass(frozen=True, eq=False)
class MatchedPair:
    A: Algebroid
    B: Algebroid
    rank_C: int
    repA: TwoRep
    repB: TwoRep
    name: str = ""

    def __post_init__(self):
        if self.A.ring != self.B.ring:
            raise ValueError("both algebroids must share one base ring")
        if self.repA.algebroid is not self.A and self.repA.algebroid.rank != self.A.rank:
            raise ValueError("repA must be a 2-representation of A")
        if self.repB.algebroid is not self.B and self.repB.algebroid.rank != self.B.rank:
            raise ValueError("repB must be a 2-representation of B")
        if self.repA.r0 != self.rank_C or self.repB.r0 != self.rank_C:
            raise ValueError("both 2-representations must have the core C in degree 0")
        if self.repA.r1 != self.B.rank:
            raise ValueError("repA must act on d_B: C -> B")
        if self.repB.r1 != self.A.rank:
            raise ValueError("repB must act on d_A: C -> A")

    @property
    def ring(self) -> VarRing:
        return self.A.ring

    # named data
    @property
    def dA(self):
        return self.repB.partial

    @property
    def dB(self):
        return self.repA.partial

    @property
    def nabla_AB(self) -> Conn:
        return self.repA.conn1

    @property
    def nabla_AC(self) -> Conn:
        return self.repA.conn0

    @property
    def nabla_BA(self) -> Conn:
        return self.repB.conn1

    @property
    def nabla_BC(self) -> Conn:
        return self.repB.conn0

    def c(self, m: int) -> tuple:
        return linalg.unit(self.ring, self.rank_C, m)

    def dA_of(self, c) -> tuple:
        return linalg.matvec(self.dA, c, self.ring)

    def dB_of(self, c) -> tuple:
        return linalg.matvec(self.dB, c, self.ring)


def check_matched(mp: MatchedPair) -> Report:
    """Residuals of (M1)..(M9) on all frame tuples, in condition order."""
    A, B, ring = mp.A, mp.B, mp.ring
    rep = Report("matched")
    rep.notes.append(TENSORIALITY_NOTE)
    rep.notes.append(M9_NOTE)
    kA, kB, kC = A.rank, B.rank, mp.rank_C
    nAB, nAC, nBA, nBC = mp.nabla_AB, mp.nabla_AC, mp.nabla_BA, mp.nabla_BC
    RA, RB = mp.repA, mp.repB
    sub, add = linalg.tsub, linalg.tadd

    # (M1) rho_A o d_A = rho_B o d_B
    for m in range(kC):
        c = mp.c(m)
        rep.add("M1", (m,), (A.rho(mp.dA_of(c)) - B.rho(mp.dB_of(c))).comps)

    # (M2) symmetric in (c1, c2)
    for p in range(kC):
        for q in range(p, kC):
            c1, c2 = mp.c(p), mp.c(q)
            lhs = sub(conn_apply(nAC, mp.dA_of(c1), c2), conn_apply(nBC, mp.dB_of(c2), c1))
            rhs = add(linalg.tneg(conn_apply(nAC, mp.dA_of(c2), c1)), conn_apply(nBC, mp.dB_of(c1), c2))
            rep.add("M2", (p, q), sub(lhs, rhs))

    # (M3) [a, d_A c] = d_A(nabla_a c) - nabla_{d_B c} a
    for i in range(kA):
        for m in range(kC):
            a, c = A.frame(i), mp.c(m)
            lhs = bracket_sections(A, a, mp.dA_of(c))
            rhs = sub(mp.dA_of(conn_apply(nAC, a, c)), conn_apply(nBA, mp.dB_of(c), a))
            rep.add("M3", (i, m), sub(lhs, rhs))

    # (M4) [b, d_B c] = d_B(nabla_b c) - nabla_{d_A c} b
    for j in range(kB):
        for m in range(kC):
            b, c = B.frame(j), mp.c(m)
            lhs = bracket_sections(B, b, mp.dB_of(c))
            rhs = sub(mp.dB_of(conn_apply(nBC, b, c)), conn_apply(nAB, mp.dA_of(c), b))
            rep.add("M4", (j, m), sub(lhs, rhs))

    # (M5) [rho_A a, rho_B b] = rho_B(nabla_a b) - rho_A(nabla_b a)
    for i in range(kA):
        for j in range(kB):
            a, b = A.frame(i), B.frame(j)
            lhs = A.rho(a).bracket(B.rho(b))
            rhs = B.rho(conn_apply(nAB, a, b)) - A.rho(conn_apply(nBA, b, a))
            rep.add("M5", (i, j), (lhs - rhs).comps)

    # (M6)
    for i in range(kA):
        for j in range(kB):
            for m in range(kC):
                a, b, c = A.frame(i), B.frame(j), mp.c(m)
                lhs = conn_apply(nBC, b, conn_apply(nAC, a, c))
                lhs = sub(lhs, conn_apply(nAC, a, conn_apply(nBC, b, c)))
                lhs = sub(lhs, conn_apply(nAC, conn_apply(nBA, b, a), c))
                lhs = add(lhs, conn_apply(nBC, conn_apply(nAB, a, b), c))
                rhs = sub(
                    linalg.matvec(RB.R_on(b, mp.dB_of(c)), a, ring),
                    linalg.matvec(RA.R_on(a, mp.dA_of(c)), b, ring),
                )
                rep.add("M6", (i, j, m), sub(lhs, rhs))

    # (M7) and (M8): same shape with the roles of A and B exchanged
    for label, X, Y, RX, nXY, nYX in (("M7", A, B, RA, nAB, nBA), ("M8", B, A, RB, nBA, nAB)):
        dY = mp.dA_of if label == "M7" else mp.dB_of
        for i1, i2 in itertools.combinations(range(X.rank), 2):
            for j in range(Y.rank):
                x1, x2, y = X.frame(i1), X.frame(i2), Y.frame(j)
                lhs = dY(linalg.matvec(RX.R_on(x1, x2), y, ring))
                rhs = linalg.tneg(conn_apply(nYX, y, bracket_sections(X, x1, x2)))
                rhs = add(rhs, bracket_sections(X, conn_apply(nYX, y, x1), x2))
                rhs = add(rhs, bracket_sections(X, x1, conn_apply(nYX, y, x2)))
                rhs = add(rhs, conn_apply(nYX, conn_apply(nXY, x2, y), x1))
                rhs = sub(rhs, conn_apply(nYX, conn_apply(nXY, x1, y), x2))
                rep.add(label, (i1, i2, j), sub(lhs, rhs))

    # (M9)
    lhs = _d_reread(A, RB, mp.nabla_AB, mp.nabla_AC, kC)
    rhs = _d_reread(B, RA, mp.nabla_BA, mp.nabla_BC, kC)
    pairsA, pairsB = wedge_pairs(kA), wedge_pairs(kB)
    for na, (i1, i2) in enumerate(pairsA):
        for nb, (s, t) in enumerate(pairsB):
            left = lhs.values[(i1, i2)][nb * kC:(nb + 1) * kC]
            right = rhs.values[(s, t)][na * kC:(na + 1) * kC]
            rep.add("M9", (i1, i2, s, t), sub(left, right))
    return rep


def _d_reread(X: Algebroid, RY: TwoRep, nXY: Conn, nXC: Conn, kC: int) -> AForm:
    """d over X of the 1-form x -> ((y_s, y_t) -> R_Y(y_s, y_t) x) in wedge^2 Y* (x) C."""
    ring = X.ring
    kY = RY.algebroid.rank
    pairs = wedge_pairs(kY)

    def omega(i):
        x = X.frame(i)
        out = []
        for s, t in pairs:
            out.extend(linalg.matvec(RY.R[(s, t)], x, ring) if kC else ())
        return tuple(out)

    form = AForm.from_function(X, 1, len(pairs) * kC, omega)
    conn = induced_connections(nXY, nXC)["wedge2dual_tensor"]
    return koszul_differential(X, conn, form)


def first_failing_condition(rep: Report):
    e = rep.first_failure()
    return None if e is None else e.condition


# -- core algebroid and Poisson structure ----------------------------------

def core_algebroid(mp: MatchedPair) -> Algebroid:
    """rho_C = rho_A o d_A and [c_p, c_q] = nabla^AC_{d_A c_p} c_q - nabla^BC_{d_B c_q} c_p."""
    ring, kC = mp.ring, mp.rank_C
    anchor = [mp.A.rho(mp.dA_of(mp.c(m))).comps for m in range(kC)]
    structure = []
    for p in range(kC):
        row = []
        for q in range(kC):
            cp, cq = mp.c(p), mp.c(q)
            row.append(linalg.tsub(conn_apply(mp.nabla_AC, mp.dA_of(cp), cq),
                                   conn_apply(mp.nabla_BC, mp.dB_of(cq), cp)))
        structure.append(row)
    return Algebroid.build(ring, anchor, structure, name="C", labels=tuple(f"c{m + 1}" for m in range(kC)))


def same_algebroid(X: Algebroid, Y: Algebroid) -> bool:
    return (
        X.rank == Y.rank
        and X.ring == Y.ring
        and linalg.is_zero(linalg.tsub(X.anchor, Y.anchor))
        and linalg.is_zero(linalg.tsub(X.structure, Y.structure))
    )


def cstar_ring(base: VarRing, rank_C: int, prefix: str = "mu") -> VarRing:
    return base.base_ring().with_fiber("C*", [f"{prefix}{m + 1}" for m in range(rank_C)])


class PoissonTable:
    """Bracket on the functions of C* from the values on coordinate functions.

    ``pi[u][v]`` is {z_u, z_v} for ring variables z; the bracket of arbitrary
    functions is sum d_u F d_v G pi[u][v].
    """

    def __init__(self, ring: VarRing, pi: tuple):
        self.ring = ring
        self.pi = pi

    def bracket(self, F: Poly, G: Poly) -> Poly:
        ring = self.ring
        F, G = ring.embed(F), ring.embed(G)
        dF = [F.partial(u) for u in range(ring.nvars)]
        dG = [G.partial(v) for v in range(ring.nvars)]
        acc = ring.zero()
        for u, fu in enumerate(dF):
            if not fu:
                continue
            for v, gv in enumerate(dG):
                if gv and self.pi[u][v]:
                    acc = acc + fu * gv * self.pi[u][v]
        return acc

    def linear(self, c) -> Poly:
        """The fiberwise-linear function l_c on C*."""
        mus = [self.ring.var(n) for n in self.ring.fiber_vars("C*")]
        return linalg.dot([self.ring.embed(x) for x in c], mus, self.ring)

    def pullback(self, f: Poly) -> Poly:
        return self.ring.embed(f)

    def jacobiator(self, F, G, H) -> Poly:
        b = self.bracket
        return b(b(F, G), H) + b(b(G, H), F) + b(b(H, F), G)


def poisson_on_cstar(mp: MatchedPair, prefix: str = "mu") -> PoissonTable:
    core = core_algebroid(mp)
    ring = cstar_ring(mp.ring, mp.rank_C, prefix)
    n, kC = mp.ring.base_dim, mp.rank_C
    N = ring.nvars
    mus = [ring.var(n + m) for m in range(kC)]
    pi = [[ring.zero()] * N for _ in range(N)]
    for p in range(kC):
        for j in range(n):
            val = ring.embed(core.anchor[p][j])
            pi[n + p][j] = val
            pi[j][n + p] = -val
        for q in range(kC):
            pi[n + p][n + q] = linalg.dot([ring.embed(x) for x in core.structure[p][q]], mus, ring)
    return PoissonTable(ring, tuple(tuple(r) for r in pi))


# -- constructions ----------------------------------------------------------

def vacant_from_representations(A: Algebroid, B: Algebroid, nabla_AB: Conn, nabla_BA: Conn) -> MatchedPair:
    """The matched pair with zero core built from two ordinary representations."""
    if A.ring != B.ring:
        raise ValueError("A and B must share a base ring")
    if nabla_AB.algebroid.rank != A.rank or nabla_AB.rank != B.rank:
        raise ValueError("nabla_AB must be an A-connection on B")
    if nabla_BA.algebroid.rank != B.rank or nabla_BA.rank != A.rank:
        raise ValueError("nabla_BA must be a B-connection on A")
    repA = TwoRep.build(A, linalg.mzero(A.ring, B.rank, 0), Conn.flat(A, 0), nabla_AB)
    repB = TwoRep.build(B, linalg.mzero(A.ring, A.rank, 0), Conn.flat(B, 0), nabla_BA)
    return MatchedPair(A, B, 0, repA, repB, name="vacant")


def transpose_change(change: SplittingChange, kA: int, kB: int, kC: int) -> SplittingChange:
    """Reread Phi in A* (x) B* (x) C as indexed by B first: Phi(b)(a) = Phi(a)(b)."""
    phi = change.phi
    return SplittingChange(tuple(
        tuple(tuple(phi[i][j][c] for c in range(kC)) for i in range(kA)) for j in range(kB)
    ))


def change_pair_splitting(mp: MatchedPair, change: SplittingChange) -> MatchedPair:
    """Apply one splitting change (indexed [a][b][c]) to both sides simultaneously."""
    other = transpose_change(change, mp.A.rank, mp.B.rank, mp.rank_C)
    return MatchedPair(mp.A, mp.B, mp.rank_C,
                       change_splitting(mp.repA, change), change_splitting(mp.repB, other), mp.name)


def replace(mp: MatchedPair, **kw) -> MatchedPair:
    """Rebuild a pair with some components swapped out (no validation of matching)."""
    data = dict(A=mp.A, B=mp.B, rank_C=mp.rank_C, repA=mp.repA, repB=mp.repB, name=mp.name)
    data.update(kw)
    return MatchedPair(**data)


def with_repA(mp: MatchedPair, **kw) -> MatchedPair:
    t = mp.repA
    data = dict(algebroid=t.algebroid, r0=t.r0, r1=t.r1, partial=t.partial,
                conn0=t.conn0, conn1=t.conn1, R=t.R, name=t.name)
    data.update(kw)
    return replace(mp, repA=TwoRep(**data))


def with_repB(mp: MatchedPair, **kw) -> MatchedPair:
    t = mp.repB
    data = dict(algebroid=t.algebroid, r0=t.r0, r1=t.r1, partial=t.partial,
                conn0=t.conn0, conn1=t.conn1, R=t.R, name=t.name)
    data.update(kw)
    return replace(mp, repB=TwoRep(**data))

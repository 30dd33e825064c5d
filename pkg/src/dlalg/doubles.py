"""Lie algebroids over total spaces and the Lie bialgebroid side of the main equivalence.

``build_vb_algebroid`` turns a 2-representation of A on d: E0 -> E1 into the
decomposed VB-algebroid D -> E1, presented in the frame of linear generators
sigma(e_i) and core generators e0_j^dagger, with fiber coordinates y_s on E1.

``DoublePair`` holds the two dual algebroids D*A -> C* and D*B -> C* built from
a matched pair, their pairing, Lie derivatives in both directions and the
ingredients of (B1)-(B3).
"""
from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .algebroid import Algebroid, VectorField, bracket_sections, lie_derivative_dual
from .connection import conn_apply, dual_connection, hom_apply
from .matched import MatchedPair, check_matched, cstar_ring
from .polyring import Poly, VarRing
from .report import Report
from .tworep import NotVerified, TwoRep, dual_tworep, is_verified

LINEAR, CORE = "linear", "core"


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """Commutator of two derivations of the total-space ring."""
    if X.ring != Y.ring:
        raise ValueError("vector fields live on different rings")
    return X.bracket(Y)


def vertical_lift(ring: VarRing, tag: str, e) -> VectorField:
    """e^up for a section e of the bundle whose linear coordinates are the ``tag`` fiber variables."""
    comps = [ring.zero()] * ring.nvars
    for s, name in enumerate(ring.fiber_vars(tag)):
        comps[ring.index(name)] = ring.embed(e[s])
    return VectorField(ring, comps)


def linear_field(ring: VarRing, tag: str, conn, a) -> VectorField:
    """The linear vector field of the derivation nabla_a: acts on base functions by rho(a)
    and on the linear coordinate of eps^s by the coordinate of (nabla_a)^* eps^s."""
    A = conn.algebroid
    base = A.rho(a)
    n = ring.base_dim
    comps = [ring.embed(c) for c in base.comps[:n]] + [ring.zero()] * (ring.nvars - n)
    ys = [ring.var(v) for v in ring.fiber_vars(tag)]
    dual = dual_connection(conn)
    r = conn.rank
    for s in range(r):
        img = conn_apply(dual, a, linalg.unit(A.ring, r, s))
        comps[ring.index(ring.fiber_vars(tag)[s])] = linalg.dot([ring.embed(x) for x in img], ys, ring)
    return VectorField(ring, comps)


@dataclass(frozen=True, eq=False)
class FiberedAlgebroid(Algebroid):
    """An algebroid over the total space of a bundle, with generators tagged linear or core."""

    kinds: tuple = ()
    fiber_tag: str = ""
    source: Optional[TwoRep] = None

    def generators(self, kind: Optional[str] = None) -> list:
        return [g for g, t in enumerate(self.kinds) if kind is None or t == kind]


def _tilde(ring: VarRing, tag: str, psi, offset: int, total: int) -> tuple:
    """psi~ = sum_{j,s} psi[j][s] y_s (core generator offset + j)."""
    ys = [ring.var(v) for v in ring.fiber_vars(tag)]
    out = [ring.zero()] * total
    for j, row in enumerate(psi):
        out[offset + j] = linalg.dot([ring.embed(x) for x in row], ys, ring)
    return tuple(out)


def build_vb_algebroid(t: TwoRep, tag: str = "E1*", names: Optional[Sequence[str]] = None,
                       validate: bool = True) -> FiberedAlgebroid:
    """The VB-algebroid D -> E1 of a 2-representation (A acting on d: E0 -> E1).

    rho(sigma(a)) = linear field of nabla1_a; rho(c^dagger) = (d c)^up;
    [sigma(a1), sigma(a2)] = sigma[a1,a2] - R(a1,a2)~; [sigma(a), c^dagger] = (nabla0_a c)^dagger;
    [c^dagger, c'^dagger] = 0.
    """
    if validate and not is_verified(t):
        raise NotVerified("build_vb_algebroid needs a valid 2-representation (validate=False to skip)")
    A = t.algebroid
    k, r0, r1 = A.rank, t.r0, t.r1
    names = list(names) if names is not None else [f"y{s + 1}" for s in range(r1)]
    if len(names) != r1:
        raise ValueError(f"need {r1} fiber coordinate names")
    ring = A.ring.base_ring().with_fiber(tag, names)
    K = k + r0
    anchor = [linear_field(ring, tag, t.conn1, A.frame(i)).comps for i in range(k)]
    for j in range(r0):
        anchor.append(vertical_lift(ring, tag, [t.partial[s][j] for s in range(r1)]).comps)
    zero = linalg.vzero(ring, K)
    st = [[zero] * K for _ in range(K)]
    for i in range(k):
        for j in range(k):
            lin = [ring.embed(x) for x in A.structure[i][j]] + [ring.zero()] * r0
            corr = _tilde(ring, tag, t.R_frame(i, j), k, K)
            st[i][j] = linalg.tsub(tuple(lin), corr)
        for j in range(r0):
            v = [ring.zero()] * K
            for l in range(r0):
                v[k + l] = ring.embed(t.conn0.christoffel[i][j][l])
            st[i][k + j] = tuple(v)
            st[k + j][i] = linalg.tneg(tuple(v))
    kinds = (LINEAR,) * k + (CORE,) * r0
    labels = tuple(f"sigma(e{i + 1})" for i in range(k)) + tuple(f"c{j + 1}+" for j in range(r0))
    D = FiberedAlgebroid(ring, tuple(tuple(a) for a in anchor), tuple(tuple(r) for r in st),
                         "D", labels, kinds, tag, t)
    _assert_vb_structure(D, t)
    return D


def _assert_vb_structure(D: FiberedAlgebroid, t: TwoRep):
    """Fiber-degree bounds and the brackets of linear and core generators with core-linear sections."""
    ring, tag = D.ring, D.fiber_tag
    k, r0, r1 = t.algebroid.rank, t.r0, t.r1
    for row in D.anchor:
        for c in row:
            assert c.fiber_degree() <= 1, "anchor leaves fiberwise-linear functions"
    for row in D.structure:
        for v in row:
            for c in v:
                assert c.fiber_degree() <= 1, "bracket coefficient of fiber degree > 1"
    for j in range(r0):
        for s in range(r1):
            psi = [[ring.zero()] * r1 for _ in range(r0)]
            psi[j][s] = ring.one()
            pt = _tilde(ring, tag, psi, k, D.rank)
            for i in range(k):
                unit_hom = tuple(tuple(t.ring.one() if (p, q) == (j, s) else t.ring.zero()
                                       for q in range(r1)) for p in range(r0))
                expect = _tilde(ring, tag, hom_apply(t.conn1, t.conn0, t.algebroid.frame(i), unit_hom), k, D.rank)
                got = bracket_sections(D, D.frame(i), pt)
                assert linalg.is_zero(linalg.tsub(got, expect)), "[sigma(a), psi~] != (nabla^Hom_a psi)~"
            for m in range(r0):
                got = bracket_sections(D, D.frame(k + m), pt)
                val = [ring.zero()] * D.rank
                val[k + j] = ring.embed(t.partial[s][m])
                assert linalg.is_zero(linalg.tsub(got, tuple(val))), "[c+, psi~] != (psi(d c))+"


def vb_grading_report(D: FiberedAlgebroid) -> Report:
    """Linear-linear brackets are linear plus core-linear, linear-core are core, core-core vanish."""
    rep = Report("vb-grading")
    kinds = D.kinds
    for u, v in itertools.combinations_with_replacement(range(D.rank), 2):
        br = D.structure[u][v]
        bad = []
        for w, c in enumerate(br):
            if kinds[u] == kinds[v] == LINEAR:
                ok = c.is_pullback() if kinds[w] == LINEAR else all(sum(e[D.ring.base_dim:]) == 1 for e in c.terms)
            elif kinds[u] == kinds[v] == CORE:
                ok = c.is_zero()
            else:
                ok = c.is_pullback() and (kinds[w] == CORE or c.is_zero())
            bad.append(D.ring.zero() if ok else c)
        rep.add("grading", (u, v), tuple(bad))
    return rep


# -- the dual pair over C* ---------------------------------------------------

def _invert(P: list) -> list:
    """Exact inverse of a rational matrix (Gauss-Jordan); raises on singular input."""
    n = len(P)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(P)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("pairing matrix is degenerate")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [[x.numerator if x.denominator == 1 else x for x in row[n:]] for row in M]


def build_dual_algebroids(mp: MatchedPair, prefix: str = "mu") -> tuple:
    """(D*A, D*B) over C*, from the duals of repA and repB; both share one ring."""
    names = [f"{prefix}{m + 1}" for m in range(mp.rank_C)]
    DA = build_vb_algebroid(dual_tworep(mp.repA, check=False), "C*", names, validate=False)
    DB = build_vb_algebroid(dual_tworep(mp.repB, check=False), "C*", names, validate=False)
    DA = FiberedAlgebroid(DA.ring, DA.anchor, DA.structure, "D*A",
                          tuple(f"sigmaA*(a{i + 1})" for i in range(mp.A.rank))
                          + tuple(f"beta{j + 1}+" for j in range(mp.B.rank)),
                          DA.kinds, DA.fiber_tag, DA.source)
    DB = FiberedAlgebroid(DB.ring, DB.anchor, DB.structure, "D*B",
                          tuple(f"sigmaB*(b{i + 1})" for i in range(mp.B.rank))
                          + tuple(f"alpha{j + 1}+" for j in range(mp.A.rank)),
                          DB.kinds, DB.fiber_tag, DB.source)
    assert DA.ring == DB.ring == cstar_ring(mp.ring, mp.rank_C, prefix)
    return DA, DB


class DoublePair:
    """The dual algebroids of a matched pair together with their pairing.

    Generators of D*A: sigma_A*(a_i) (i < kA), then beta_j^dagger (j < kB).
    Generators of D*B: sigma_B*(b_i) (i < kB), then alpha_j^dagger (j < kA).
    Pairing: <<sigma_A*, sigma_B*>> = 0, <<sigma_A*(a_i), alpha_j+>> = -delta_ij,
    <<beta_i+, sigma_B*(b_j)>> = delta_ij, <<beta+, alpha+>> = 0.
    """

    def __init__(self, mp: MatchedPair, prefix: str = "mu"):
        self.mp = mp
        self.DA, self.DB = build_dual_algebroids(mp, prefix)
        self.ring = self.DA.ring
        self.kA, self.kB, self.kC = mp.A.rank, mp.B.rank, mp.rank_C
        kA, kB = self.kA, self.kB
        n = kA + kB
        P = [[0] * n for _ in range(n)]
        for i in range(kA):
            P[i][kB + i] = -1
        for i in range(kB):
            P[kA + i][i] = 1
        self.P = P
        self.Pinv = _invert(P)
        self.PinvT = _invert([list(r) for r in zip(*P)])
        self._lie_ab: dict = {}
        self._lie_ba: dict = {}

    # -- embeddings of base data -----------------------------------------
    def _emb(self, v) -> list:
        return [self.ring.embed(x) for x in v]

    def sigmaA(self, a) -> tuple:
        return tuple(self._emb(a)) + linalg.vzero(self.ring, self.kB)

    def beta_dag(self, beta) -> tuple:
        return linalg.vzero(self.ring, self.kA) + tuple(self._emb(beta))

    def sigmaB(self, b) -> tuple:
        return tuple(self._emb(b)) + linalg.vzero(self.ring, self.kA)

    def alpha_dag(self, alpha) -> tuple:
        return linalg.vzero(self.ring, self.kB) + tuple(self._emb(alpha))

    def tilde_B(self, psi) -> tuple:
        """psi~ in D*B for psi[j][s] in Hom(C*, A*) (alpha_j+ coefficient sum_s psi[j][s] mu_s)."""
        return _tilde(self.ring, "C*", psi, self.kB, self.kA + self.kB)

    def tilde_A(self, psi) -> tuple:
        return _tilde(self.ring, "C*", psi, self.kA, self.kA + self.kB)

    def linear(self, c) -> Poly:
        mus = [self.ring.var(v) for v in self.ring.fiber_vars("C*")]
        return linalg.dot(self._emb(c), mus, self.ring)

    # -- pairing and anchors ---------------------------------------------
    def pairing(self, X, Y) -> Poly:
        acc = self.ring.zero()
        for u, xu in enumerate(X):
            if not xu:
                continue
            for v, yv in enumerate(Y):
                if yv and self.P[u][v]:
                    acc = acc + xu * yv * self.P[u][v]
        return acc

    def theta_A(self, X) -> VectorField:
        return self.DA.rho(X)

    def theta_B(self, Y) -> VectorField:
        return self.DB.rho(Y)

    def _solve(self, inv, rhs) -> tuple:
        ring = self.ring
        out = []
        for row in inv:
            acc = ring.zero()
            for c, r in zip(row, rhs):
                if c and r:
                    acc = acc + r * c
            out.append(acc)
        return tuple(out)

    # -- Lie derivatives -------------------------------------------------
    def lie_AB(self, X, Y) -> tuple:
        """L_X Y in D*B, from <<g, L_X Y>> = Theta_A(X)<<g, Y>> - <<[X, g], Y>> for generators g."""
        tX = self.theta_A(X)
        rhs = [tX(self.pairing(g, Y)) - self.pairing(bracket_sections(self.DA, X, g), Y)
               for g in (self.DA.frame(u) for u in range(self.DA.rank))]
        return self._solve(self.Pinv, rhs)

    def lie_BA(self, Y, X) -> tuple:
        """L_Y X in D*A, from <<L_Y X, h>> = Theta_B(Y)<<X, h>> - <<X, [Y, h]>> for generators h."""
        tY = self.theta_B(Y)
        rhs = [tY(self.pairing(X, h)) - self.pairing(X, bracket_sections(self.DB, Y, h))
               for h in (self.DB.frame(v) for v in range(self.DB.rank))]
        return self._solve(self.PinvT, rhs)

    def lie_AB_gen(self, u: int, v: int) -> tuple:
        key = (u, v)
        if key not in self._lie_ab:
            self._lie_ab[key] = self.lie_AB(self.DA.frame(u), self.DB.frame(v))
        return self._lie_ab[key]

    def lie_BA_gen(self, v: int, u: int) -> tuple:
        key = (v, u)
        if key not in self._lie_ba:
            self._lie_ba[key] = self.lie_BA(self.DB.frame(v), self.DA.frame(u))
        return self._lie_ba[key]

    # -- closed forms ----------------------------------------------------
    def closed_lie_AB(self, kind_x: str, x, kind_y: str, y) -> tuple:
        """L_X Y in closed form; x, y are base sections (a or beta, b or alpha)."""
        mp, ring = self.mp, self.mp.ring
        if kind_x == CORE and kind_y == CORE:
            return linalg.vzero(self.ring, self.kA + self.kB)
        if kind_x == CORE:  # L_{beta+} sigma_B*(b) = -<b, nabla*_. beta>+
            dual = dual_connection(mp.nabla_AB)
            alpha = tuple(linalg.dot(y, conn_apply(dual, mp.A.frame(i), x), ring) for i in range(self.kA))
            return linalg.tneg(self.alpha_dag(alpha))
        if kind_y == CORE:  # L_{sigma_A*(a)} alpha+ = (L_a alpha)+
            return self.alpha_dag(lie_derivative_dual(mp.A, x, y))
        psi = [linalg.matvec(mp.repA.R_on(x, mp.A.frame(j)), y, ring) for j in range(self.kA)]
        return linalg.tadd(self.sigmaB(conn_apply(mp.nabla_AB, x, y)), self.tilde_B(psi))

    def closed_lie_BA(self, kind_y: str, y, kind_x: str, x) -> tuple:
        """The flipped identities: L_Y X for Y in D*B, X in D*A."""
        mp, ring = self.mp, self.mp.ring
        if kind_y == CORE and kind_x == CORE:
            return linalg.vzero(self.ring, self.kA + self.kB)
        if kind_y == CORE:  # L_{alpha+} sigma_A*(a) = -<a, nabla*_. alpha>+
            dual = dual_connection(mp.nabla_BA)
            beta = tuple(linalg.dot(x, conn_apply(dual, mp.B.frame(j), y), ring) for j in range(self.kB))
            return linalg.tneg(self.beta_dag(beta))
        if kind_x == CORE:  # L_{sigma_B*(b)} beta+ = (L_b beta)+
            return self.beta_dag(lie_derivative_dual(mp.B, y, x))
        psi = [linalg.matvec(mp.repB.R_on(y, mp.B.frame(j)), x, ring) for j in range(self.kB)]
        return linalg.tadd(self.sigmaA(conn_apply(mp.nabla_BA, y, x)), self.tilde_A(psi))

    def generator_data(self, side: str, u: int):
        """(kind, base section) for generator u of D*A (side 'A') or D*B (side 'B')."""
        ring = self.mp.ring
        if side == "A":
            if u < self.kA:
                return LINEAR, linalg.unit(ring, self.kA, u)
            return CORE, linalg.unit(ring, self.kB, u - self.kA)
        if u < self.kB:
            return LINEAR, linalg.unit(ring, self.kB, u)
        return CORE, linalg.unit(ring, self.kA, u - self.kB)

    # -- d_* and the bialgebroid defect ----------------------------------
    def dstar(self, X) -> tuple:
        """(d_* X)(h_u, h_v) on generator pairs of D*B, as an antisymmetric matrix."""
        DB = self.DB
        n = DB.rank
        pv = [self.pairing(X, DB.frame(v)) for v in range(n)]
        M = [[self.ring.zero()] * n for _ in range(n)]
        for u in range(n):
            tu = self.theta_B(DB.frame(u))
            for v in range(n):
                if u == v:
                    continue
                br = self.pairing(X, DB.structure[u][v])
                M[u][v] = tu(pv[v]) - self.theta_B(DB.frame(v))(pv[u]) - br
        return tuple(tuple(r) for r in M)

    def _lie_on_generators(self, X) -> list:
        if all(c.constant_value() is not None for c in X) and sum(1 for c in X if c) == 1:
            u = next(i for i, c in enumerate(X) if c)
            scale = X[u].constant_value()
            return [linalg.tscale(scale, self.lie_AB_gen(u, v)) for v in range(self.DB.rank)]
        return [self.lie_AB(X, self.DB.frame(v)) for v in range(self.DB.rank)]

    def lie_form(self, X, M) -> tuple:
        """(L_X M)(h_u, h_v) = Theta_A(X) M(h_u, h_v) - M(L_X h_u, h_v) - M(h_u, L_X h_v)."""
        n = self.DB.rank
        tX = self.theta_A(X)
        L = self._lie_on_generators(X)
        ring = self.ring

        def ev(Y1, Y2):
            acc = ring.zero()
            for p, y1 in enumerate(Y1):
                if not y1:
                    continue
                for q, y2 in enumerate(Y2):
                    if y2 and M[p][q]:
                        acc = acc + y1 * y2 * M[p][q]
            return acc

        out = [[ring.zero()] * n for _ in range(n)]
        for u in range(n):
            for v in range(n):
                if u != v:
                    hu, hv = self.DB.frame(u), self.DB.frame(v)
                    out[u][v] = tX(M[u][v]) - ev(L[u], hv) - ev(hu, L[v])
        return tuple(tuple(r) for r in out)

    def defect(self, X1, X2) -> tuple:
        """d_*[X1, X2] - [d_* X1, X2] - [X1, d_* X2] on D*B generator pairs."""
        d12 = self.dstar(bracket_sections(self.DA, X1, X2))
        a = self.lie_form(X2, self.dstar(X1))
        b = self.lie_form(X1, self.dstar(X2))
        return linalg.tsub(linalg.tadd(d12, a), b)

    def theta_A_star(self, F: Poly) -> tuple:
        """Theta_A^*(dF) in D*B: <<X, Theta_A^*(dF)>> = Theta_A(X)F."""
        F = self.ring.embed(F)
        rhs = [self.theta_A(self.DA.frame(u))(F) for u in range(self.DA.rank)]
        return self._solve(self.Pinv, rhs)

    def theta_B_star(self, F: Poly) -> tuple:
        """Theta_B^*(dF) in D*A: <<Theta_B^*(dF), Y>> = Theta_B(Y)F."""
        F = self.ring.embed(F)
        rhs = [self.theta_B(self.DB.frame(v))(F) for v in range(self.DB.rank)]
        return self._solve(self.PinvT, rhs)

    def b2(self, X, Y, f: Poly) -> Poly:
        """[Theta_A X, Theta_B Y]f - Theta_B(L_X Y)f + Theta_A(L_Y X)f - Theta_B(Theta_A^* df)<<X, Y>>."""
        f = self.ring.embed(f)
        tX, tY = self.theta_A(X), self.theta_B(Y)
        out = tX.bracket(tY)(f)
        out = out - self.theta_B(self.lie_AB(X, Y))(f)
        out = out + self.theta_A(self.lie_BA(Y, X))(f)
        out = out - self.theta_B(self.theta_A_star(f))(self.pairing(X, Y))
        return out

    def b3(self, F: Poly) -> VectorField:
        """Theta_A(Theta_B^* dF) + Theta_B(Theta_A^* dF); zero iff -Theta_A o Theta_B^* = Theta_B o Theta_A^* on dF."""
        return self.theta_A(self.theta_B_star(F)) + self.theta_B(self.theta_A_star(F))

    def poisson_bracket(self, F: Poly, G: Poly) -> Poly:
        """{F, G} = Theta_B(Theta_A^* dF) G."""
        return self.theta_B(self.theta_A_star(F))(self.ring.embed(G))


def check_bialgebroid(mp: MatchedPair, pair: Optional[DoublePair] = None) -> Report:
    """(B1)-(B3) on the spanning generators of D*A and D*B.

    (B2) is evaluated on the coordinate functions x_k and mu_l; it is a derivation
    in f, so coordinate functions suffice.  A product of two coordinates is
    included as a spot check.
    """
    dp = pair or DoublePair(mp)
    DA, DB, ring = dp.DA, dp.DB, dp.ring
    rep = Report("bialgebroid")
    rep.notes.append("(B1) on pairs of D*A generators, evaluated on pairs of D*B generators")
    rep.notes.append("(B2) on generator pairs and coordinate functions (derivation in f), "
                     "plus one product function as a spot check")
    rep.notes.append("(B3) on the differentials of all coordinate functions of C*")
    nA, nB = DA.rank, DB.rank
    for u1, u2 in itertools.combinations(range(nA), 2):
        D = dp.defect(DA.frame(u1), DA.frame(u2))
        for v1, v2 in itertools.combinations(range(nB), 2):
            rep.add("B1", (u1, u2, v1, v2), D[v1][v2])
    fs = list(ring.gens())
    spot = fs[0] * fs[-1] if fs else None
    for u in range(nA):
        for v in range(nB):
            X, Y = DA.frame(u), DB.frame(v)
            for w, f in enumerate(fs):
                rep.add("B2", (u, v, ring.names[w]), dp.b2(X, Y, f))
            if spot is not None:
                rep.add("B2", (u, v, str(spot)), dp.b2(X, Y, spot))
    for w, F in enumerate(fs):
        rep.add("B3", (ring.names[w],), dp.b3(F).comps)
    return rep


@dataclass
class OracleResult:
    matched: Report
    bialgebroid: Report

    @property
    def agree(self) -> bool:
        return self.matched.passed == self.bialgebroid.passed

    def summary(self) -> dict:
        return {
            "matched": self.matched.verdict,
            "bialgebroid": self.bialgebroid.verdict,
            "agreement": self.agree,
        }


def oracle_equivalence(mp: MatchedPair) -> OracleResult:
    """Run (M1)-(M9) and (B1)-(B3) independently on the same pair."""
    return OracleResult(check_matched(mp), check_bialgebroid(mp))


CONVENTIONS = (
    "pairing <<sigmaA*(a),alpha+>>=-<alpha,a>; <<beta+,sigmaB*(b)>>=<beta,b>; <<beta+,alpha+>>=0",
    "VB bracket [sigma(a1),sigma(a2)]=sigma[a1,a2]-R(a1,a2)~",
    "dual 2-rep (d^T, nabla1*, nabla0*, -R^T)",
    "jacobiator [[s,t],u]+[[t,u],s]+[[u,s],t]",
    "curvature R(a1,a2)=[nabla_a1,nabla_a2]-nabla_[a1,a2]",
    "M9 rereading R_B(a)(b1,b2)=R_B(b1,b2)a, R_A(b)(a1,a2)=R_A(a1,a2)b",
    "structure operator K=-R",
)


def convention_fingerprint() -> str:
    return hashlib.sha256("\n".join(CONVENTIONS).encode()).hexdigest()[:16]

"""Shipped example models and seeded random generators for property tests and fuzzing."""
from __future__ import annotations

import random
from typing import Callable

from .algebroid import Algebroid
from .connection import Conn
from .matched import MatchedPair, change_pair_splitting, vacant_from_representations, with_repA, with_repB
from .polyring import Poly, VarRing
from .tangent import TangentInput, tangent_double_matched_pair
from .tworep import SplittingChange, TwoRep


# -- named fixtures ---------------------------------------------------------

def tm1_input() -> TangentInput:
    """TM over R with the flat connection."""
    return TangentInput.build(Algebroid.tangent(1))


def rank1_input() -> TangentInput:
    """Rank-1 algebroid over R with anchor x1 d/dx1 and the flat connection."""
    ring = VarRing.euclidean(1)
    return TangentInput.build(Algebroid.build(ring, [["x1"]], name="rank1"))


TM2_CHRISTOFFEL = (
    (("0", "x2"), ("1", "x1")),
    (("x1^2", "0"), ("0", "x2")),
)


def tm2_input() -> TangentInput:
    """TM over R^2 with a non-flat polynomial connection."""
    return TangentInput.build(Algebroid.tangent(2), TM2_CHRISTOFFEL)


TANGENT_FIXTURES: dict[str, Callable[[], TangentInput]] = {
    "tm1_tangent": tm1_input,
    "rank1_tangent": rank1_input,
    "tm2_tangent": tm2_input,
}


def vacant_flat() -> MatchedPair:
    """Two abelian rank-1 algebroids over R^2 with commuting anchors d/dx1, d/dx2 and flat representations."""
    ring = VarRing.euclidean(2)
    A = Algebroid.build(ring, [["1", "0"]], name="A")
    B = Algebroid.build(ring, [["0", "1"]], name="B")
    return vacant_from_representations(A, B, Conn.flat(A, 1), Conn.flat(B, 1))


def _bump(ring: VarRing, p: Poly, amount=1) -> Poly:
    return p + ring.const(amount)


def broken_m1() -> MatchedPair:
    """tm2 tangent double with rho_B(e1) shifted by d/dx2."""
    mp = tangent_double_matched_pair(tm2_input())
    ring, B, t = mp.ring, mp.B, mp.repB
    anchor = [list(r) for r in B.anchor]
    anchor[0][1] = _bump(ring, anchor[0][1])
    B2 = Algebroid.build(ring, anchor, B.structure, name=B.name)

    def moved(c: Conn) -> Conn:
        return Conn(B2, c.rank, c.christoffel, c.name)

    rep = TwoRep(B2, t.r0, t.r1, t.partial, moved(t.conn0), moved(t.conn1), t.R, t.name)
    return MatchedPair(mp.A, B2, mp.rank_C, mp.repA, rep, "broken_m1")


def broken_m6() -> MatchedPair:
    """tm2 tangent double with one Christoffel symbol of nabla^BC shifted by 1."""
    mp = tangent_double_matched_pair(tm2_input())
    c = mp.repB.conn0
    ch = [[list(r) for r in m] for m in c.christoffel]
    ch[0][0][0] = _bump(mp.ring, ch[0][0][0])
    conn = Conn(c.algebroid, c.rank, tuple(tuple(tuple(r) for r in m) for m in ch), c.name)
    return MatchedPair(**{**_fields(with_repB(mp, conn0=conn)), "name": "broken_m6"})


def broken_m7() -> MatchedPair:
    """tm2 tangent double with R_A(d1, d2) shifted by a constant in one entry."""
    mp = tangent_double_matched_pair(tm2_input())
    R = dict(mp.repA.R)
    m = [list(r) for r in R[(0, 1)]]
    m[0][0] = _bump(mp.ring, m[0][0])
    R[(0, 1)] = tuple(tuple(r) for r in m)
    return MatchedPair(**{**_fields(with_repA(mp, R=R)), "name": "broken_m7"})


def _fields(mp: MatchedPair) -> dict:
    return dict(A=mp.A, B=mp.B, rank_C=mp.rank_C, repA=mp.repA, repB=mp.repB, name=mp.name)


# -- random generation ------------------------------------------------------

def random_poly(rng: random.Random, ring: VarRing, max_degree: int = 2, density: float = 0.35,
                coeffs=(-2, -1, 1, 2)) -> Poly:
    """A sparse random polynomial in the base variables of ``ring``."""
    n = ring.base_dim
    terms = {}
    for deg in range(max_degree + 1):
        for e in _monomials(n, deg):
            if rng.random() < density:
                terms[e + (0,) * (ring.nvars - n)] = rng.choice(coeffs)
    return Poly(ring, terms)


def _monomials(n: int, deg: int):
    if n == 0:
        if deg == 0:
            yield ()
        return
    for first in range(deg, -1, -1):
        for rest in _monomials(n - 1, deg - first):
            yield (first,) + rest


def random_christoffel(rng: random.Random, ring: VarRing, k: int, r: int, max_degree: int = 2,
                       density: float = 0.3) -> tuple:
    return tuple(
        tuple(tuple(random_poly(rng, ring, max_degree, density) for _ in range(r)) for _ in range(r))
        for _ in range(k)
    )


def random_algebroid(rng: random.Random, n: int) -> Algebroid:
    """A small verified algebroid over R^n from a few families closed under the Jacobi identity."""
    ring = VarRing.euclidean(n)
    kind = rng.choice(["tangent", "rank1", "zero", "aff1"] if n >= 1 else ["zero"])
    if kind == "tangent":
        return Algebroid.tangent(ring)
    if kind == "rank1":
        row = [random_poly(rng, ring, 2, 0.4) for _ in range(n)]
        return Algebroid.build(ring, [row], name="rank1")
    if kind == "aff1":
        # rho(e1) = -x1 d1, rho(e2) = d1, [e1, e2] = e2
        anchor = [["-x1"] + ["0"] * (n - 1), ["1"] + ["0"] * (n - 1)]
        st = [[["0", "0"], ["0", "1"]], [["0", "-1"], ["0", "0"]]]
        return Algebroid.build(ring, anchor, st, name="aff1")
    k = rng.randint(1, 2)
    return Algebroid.build(ring, [["0"] * n for _ in range(k)], name="zero")


def random_tangent_input(rng: random.Random, max_degree: int = 2) -> TangentInput:
    n = rng.randint(1, 2)
    A = random_algebroid(rng, n)
    return TangentInput.build(A, random_christoffel(rng, A.ring, n, A.rank, max_degree))


def random_splitting_change(rng: random.Random, mp: MatchedPair, max_degree: int = 2) -> SplittingChange:
    ring = mp.ring
    return SplittingChange(tuple(
        tuple(tuple(random_poly(rng, ring, max_degree, 0.3) for _ in range(mp.rank_C)) for _ in range(mp.B.rank))
        for _ in range(mp.A.rank)
    ))


def perturb(rng: random.Random, mp: MatchedPair) -> MatchedPair:
    """Change one Christoffel symbol or curvature entry of a matched pair by a random polynomial."""
    ring = mp.ring
    delta = random_poly(rng, ring, 1, 0.6) or ring.one()
    side = rng.choice("AB")
    t = mp.repA if side == "A" else mp.repB
    with_rep = with_repA if side == "A" else with_repB
    options = [f for f in ("conn0", "conn1") if getattr(t, f).rank and t.algebroid.rank]
    if t.R and t.r0 and t.r1:
        options.append("R")
    if not options:
        return mp
    which = rng.choice(options)
    if which == "R":
        R = dict(t.R)
        key = rng.choice(sorted(R))
        m = [list(r) for r in R[key]]
        p, q = rng.randrange(t.r0), rng.randrange(t.r1)
        m[p][q] = m[p][q] + delta
        R[key] = tuple(tuple(r) for r in m)
        return with_rep(mp, R=R)
    c = getattr(t, which)
    ch = [[list(r) for r in m] for m in c.christoffel]
    i, j, l = rng.randrange(len(ch)), rng.randrange(c.rank), rng.randrange(c.rank)
    ch[i][j][l] = ch[i][j][l] + delta
    conn = Conn(c.algebroid, c.rank, tuple(tuple(tuple(r) for r in m) for m in ch), c.name)
    return with_rep(mp, **{which: conn})


def random_vacant(rng: random.Random) -> MatchedPair:
    """A vacant pair of two rank-1 algebroids with constant anchors and random 1-dimensional representations.

    With constant commuting anchors and scalar representations this is a matched
    pair exactly when the (M5) and mixed-flatness conditions hold, which the
    random data may or may not satisfy.
    """
    n = rng.randint(1, 2)
    ring = VarRing.euclidean(n)
    A = Algebroid.build(ring, [[rng.choice(["0", "1"]) for _ in range(n)]], name="A")
    B = Algebroid.build(ring, [[rng.choice(["0", "1"]) for _ in range(n)]], name="B")
    nab = Conn.build(A, 1, [[[random_poly(rng, ring, 1, 0.3)]]])
    nba = Conn.build(B, 1, [[[random_poly(rng, ring, 1, 0.3)]]])
    return vacant_from_representations(A, B, nab, nba)


def random_model(rng: random.Random) -> tuple[str, MatchedPair]:
    """One fuzzing case, labelled by how it was produced."""
    kind = rng.choice(["tangent", "tangent-split", "perturbed", "perturbed", "vacant"])
    if kind == "vacant":
        return kind, random_vacant(rng)
    mp = tangent_double_matched_pair(random_tangent_input(rng))
    if kind == "tangent-split":
        mp = change_pair_splitting(mp, random_splitting_change(rng, mp))
    elif kind == "perturbed":
        mp = perturb(rng, mp)
    return kind, mp


def random_tworep(rng: random.Random, valid: bool = True) -> TwoRep:
    """A small 2-representation: the tangent or tangent-prolongation one of a random input,
    optionally perturbed in a single entry."""
    from .tangent import tangent_prolongation_rep, tangent_rep
    from .tworep import change_splitting

    inp = random_tangent_input(rng, max_degree=1)
    t = rng.choice([tangent_rep, tangent_prolongation_rep])(inp)
    if rng.random() < 0.5 and t.r0 and t.r1 and t.algebroid.rank:
        phi = tuple(
            tuple(tuple(random_poly(rng, t.ring, 1, 0.3) for _ in range(t.r0)) for _ in range(t.r1))
            for _ in range(t.algebroid.rank)
        )
        t = change_splitting(t, SplittingChange(phi))
    if valid:
        return t
    return _perturb_tworep(rng, t)


def _perturb_tworep(rng: random.Random, t: TwoRep) -> TwoRep:
    ring = t.ring
    delta = random_poly(rng, ring, 1, 0.6) or ring.one()
    fields = dict(algebroid=t.algebroid, r0=t.r0, r1=t.r1, partial=t.partial,
                  conn0=t.conn0, conn1=t.conn1, R=t.R, name=t.name)
    options = ["partial"] if t.r0 and t.r1 else []
    options += [f for f in ("conn0", "conn1") if getattr(t, f).rank and t.algebroid.rank]
    if t.R and t.r0 and t.r1:
        options.append("R")
    if not options:
        return t
    which = rng.choice(options)
    if which == "partial":
        m = [list(r) for r in t.partial]
        p, q = rng.randrange(t.r1), rng.randrange(t.r0)
        m[p][q] = m[p][q] + delta
        fields["partial"] = tuple(tuple(r) for r in m)
    elif which == "R":
        R = dict(t.R)
        key = rng.choice(sorted(R))
        m = [list(r) for r in R[key]]
        m[rng.randrange(t.r0)][rng.randrange(t.r1)] += delta
        R[key] = tuple(tuple(r) for r in m)
        fields["R"] = R
    else:
        c = fields[which]
        ch = [[list(r) for r in m] for m in c.christoffel]
        ch[rng.randrange(len(ch))][rng.randrange(c.rank)][rng.randrange(c.rank)] += delta
        fields[which] = Conn(c.algebroid, c.rank, tuple(tuple(tuple(r) for r in m) for m in ch), c.name)
    return TwoRep(**fields)


__all__ = [
    "TANGENT_FIXTURES", "tm1_input", "rank1_input", "tm2_input", "vacant_flat",
    "broken_m1", "broken_m6", "broken_m7", "random_poly", "random_christoffel",
    "random_algebroid", "random_tangent_input", "random_splitting_change", "perturb",
    "random_vacant", "random_model", "random_tworep",
]

import itertools
import random

import pytest

from dlalg import linalg
from dlalg.algebroid import Algebroid, bracket_sections, check_lie_algebroid
from dlalg.connection import Conn, conn_apply
from dlalg.doubles import (
    CORE,
    LINEAR,
    DoublePair,
    build_vb_algebroid,
    check_bialgebroid,
    convention_fingerprint,
    linear_field,
    oracle_equivalence,
    vb_grading_report,
    vertical_lift,
    vf_bracket,
)
from dlalg.fixtures import (
    TANGENT_FIXTURES,
    broken_m1,
    broken_m6,
    broken_m7,
    random_poly,
    tm2_input,
    vacant_flat,
)
from dlalg.matched import poisson_on_cstar
from dlalg.tangent import tangent_double_matched_pair, tangent_prolongation_rep, tangent_rep
from dlalg.tworep import NotVerified, TwoRep


@pytest.fixture(scope="module")
def tm2_pair():
    return DoublePair(tangent_double_matched_pair(tm2_input()))


@pytest.fixture(scope="module")
def m6_pair():
    return DoublePair(broken_m6())


def _fixture_pairs():
    pairs = [(name, tangent_double_matched_pair(f())) for name, f in TANGENT_FIXTURES.items()]
    return pairs + [("vacant_flat", vacant_flat())]


def _shift_R(t: TwoRep, amount=1) -> TwoRep:
    eye = linalg.identity(t.ring, t.r0)
    R = {k: linalg.tadd(m, linalg.tscale(t.ring.const(amount), eye)) for k, m in t.R.items()}
    return TwoRep(t.algebroid, t.r0, t.r1, t.partial, t.conn0, t.conn1, R)


# -- the VB-algebroid of a 2-representation --------------------------------

def test_vertical_lifts_commute():
    t = tangent_rep(tm2_input())
    D = build_vb_algebroid(t)
    lifts = [D.rho(D.frame(g)) for g in D.generators(CORE)]
    for X, Y in itertools.combinations(lifts, 2):
        assert vf_bracket(X, Y).is_zero()


def test_linear_field_acts_on_lifts_by_the_connection():
    t = tangent_rep(tm2_input())
    D = build_vb_algebroid(t)
    ring, A = D.ring, t.algebroid
    rng = random.Random(3)
    for i in range(A.rank):
        e = tuple(random_poly(rng, t.ring, 2) for _ in range(t.r1))
        lhs = vf_bracket(linear_field(ring, D.fiber_tag, t.conn1, A.frame(i)), vertical_lift(ring, D.fiber_tag, e))
        rhs = vertical_lift(ring, D.fiber_tag, conn_apply(t.conn1, A.frame(i), e))
        assert lhs == rhs


def test_bracket_of_linear_fields_picks_up_curvature():
    t = tangent_rep(tm2_input())
    D = build_vb_algebroid(t)
    A = t.algebroid
    for i, j in itertools.combinations(range(A.rank), 2):
        lhs = vf_bracket(D.rho(D.frame(i)), D.rho(D.frame(j)))
        br = linear_field(D.ring, D.fiber_tag, t.conn1, bracket_sections(A, A.frame(i), A.frame(j)))
        core = t.R_frame(i, j)
        lift = sum((D.rho(D.frame(A.rank + l)).scale(linalg.dot(
            [D.ring.embed(x) for x in core[l]], [D.ring.var(y) for y in D.ring.fiber_vars(D.fiber_tag)], D.ring))
            for l in range(t.r0)), type(lhs).zero(D.ring))
        assert lhs == br - lift


def test_zero_representation_gives_abelian_double():
    T = Algebroid.tangent(2)
    ring = T.ring
    R = {(0, 1): linalg.mzero(ring, 1, 1)}
    t = TwoRep(T, 1, 1, linalg.mzero(ring, 1, 1), Conn.flat(T, 1), Conn.flat(T, 1), R)
    D = build_vb_algebroid(t)
    core = D.generators(CORE)
    assert core == [2]
    assert D.rho(D.frame(2)).is_zero()
    for g in range(D.rank):
        assert linalg.is_zero(D.structure[g][2])
    assert check_lie_algebroid(D).passed


@pytest.mark.parametrize("name", sorted(TANGENT_FIXTURES))
@pytest.mark.parametrize("builder", [tangent_rep, tangent_prolongation_rep])
def test_vb_algebroid_of_valid_rep_is_lie(name, builder):
    D = build_vb_algebroid(builder(TANGENT_FIXTURES[name]()))
    assert check_lie_algebroid(D).passed
    assert vb_grading_report(D).passed


def test_shifted_curvature_breaks_jacobi_on_linear_linear_core():
    t = tangent_rep(tm2_input())
    D = build_vb_algebroid(_shift_R(t), validate=False)
    rep = check_lie_algebroid(D)
    bad = [e.indices for e in rep.failures() if e.condition == "jacobi"]
    assert bad
    for idx in bad:
        kinds = sorted(D.kinds[g] for g in idx)
        assert kinds == [CORE, LINEAR, LINEAR]


def test_invalid_rep_is_refused():
    with pytest.raises(NotVerified):
        build_vb_algebroid(_shift_R(tangent_rep(tm2_input())))


# -- the dual algebroids and their pairing -------------------------------

def test_generator_layout(tm2_pair):
    dp = tm2_pair
    assert dp.DA.kinds == (LINEAR,) * dp.kA + (CORE,) * dp.kB
    assert dp.DB.kinds == (LINEAR,) * dp.kB + (CORE,) * dp.kA
    assert dp.ring.fiber_vars("C*") == ("mu1", "mu2")


def test_vacant_pair_has_no_fiber_coordinates():
    dp = DoublePair(vacant_flat())
    assert dp.ring.names == ("x1", "x2")
    # no core-linear corrections: linear brackets are the plain lifts
    for i, j in itertools.combinations(range(dp.kA), 2):
        expected = dp.sigmaA(bracket_sections(dp.mp.A, dp.mp.A.frame(i), dp.mp.A.frame(j)))
        assert dp.DA.structure[i][j] == expected


def test_pairing_on_generators(tm2_pair):
    dp = tm2_pair
    ring = dp.ring
    for i in range(dp.kA):
        for j in range(dp.kA):
            a, al = linalg.unit(dp.mp.ring, dp.kA, i), linalg.unit(dp.mp.ring, dp.kA, j)
            assert dp.pairing(dp.sigmaA(a), dp.alpha_dag(al)) == ring.const(-(i == j))
    for i in range(dp.kB):
        for j in range(dp.kB):
            be, b = linalg.unit(dp.mp.ring, dp.kB, i), linalg.unit(dp.mp.ring, dp.kB, j)
            assert dp.pairing(dp.beta_dag(be), dp.sigmaB(b)) == ring.const(int(i == j))
    for u in range(dp.DA.rank):
        assert dp.pairing(dp.DA.frame(u), dp.sigmaB(linalg.unit(dp.mp.ring, dp.kB, 0))) == (
            ring.const(int(u == dp.kA)))


def test_pairing_is_bilinear_over_functions(tm2_pair):
    dp = tm2_pair
    rng = random.Random(11)
    for _ in range(5):
        F = random_poly(rng, dp.ring, 2)
        X = tuple(random_poly(rng, dp.ring, 1) for _ in range(dp.DA.rank))
        Y = tuple(random_poly(rng, dp.ring, 1) for _ in range(dp.DB.rank))
        assert dp.pairing(linalg.tscale(F, X), Y) == F * dp.pairing(X, Y)
        assert dp.pairing(X, linalg.tscale(F, Y)) == F * dp.pairing(X, Y)


def test_core_anchor_is_dual_of_d(tm2_pair):
    dp, mp = tm2_pair, tm2_pair.mp
    dA = mp.repB.partial
    for j in range(dp.kA):
        got = dp.theta_B(dp.DB.frame(dp.kB + j))
        want = vertical_lift(dp.ring, "C*", [dA[j][s] for s in range(dp.kC)])
        assert got == want


def test_dual_linear_bracket_carries_transposed_curvature(tm2_pair):
    dp, mp = tm2_pair, tm2_pair.mp
    A = mp.A
    for i, j in itertools.combinations(range(dp.kA), 2):
        R = mp.repA.R_on(A.frame(i), A.frame(j))
        psi = [[R[s][b] for s in range(dp.kC)] for b in range(dp.kB)]
        expected = linalg.tadd(dp.sigmaA(bracket_sections(A, A.frame(i), A.frame(j))), dp.tilde_A(psi))
        assert dp.DA.structure[i][j] == expected


@pytest.mark.parametrize("name,mp", _fixture_pairs(), ids=lambda v: v if isinstance(v, str) else "")
def test_closed_forms_match_definitions(name, mp):
    dp = DoublePair(mp)
    for u in range(dp.DA.rank):
        kx, x = dp.generator_data("A", u)
        for v in range(dp.DB.rank):
            ky, y = dp.generator_data("B", v)
            assert dp.lie_AB_gen(u, v) == dp.closed_lie_AB(kx, x, ky, y), (u, v)
            assert dp.lie_BA_gen(v, u) == dp.closed_lie_BA(ky, y, kx, x), (v, u)


# -- bialgebroid conditions --------------------------------------------

@pytest.mark.parametrize("name,mp", _fixture_pairs(), ids=lambda v: v if isinstance(v, str) else "")
def test_fixtures_are_bialgebroids(name, mp):
    rep = check_bialgebroid(mp)
    assert rep.passed, rep.summary()
    assert len(rep.notes) == 3


def test_broken_anchor_breaks_b3():
    rep = check_bialgebroid(broken_m1())
    assert "B3" in rep.failed_conditions()


def test_broken_connection_breaks_b2_on_linear_pairs():
    dp = DoublePair(broken_m6())
    rep = check_bialgebroid(broken_m6(), dp)
    hits = [e.indices for e in rep.failures() if e.condition == "B2"]
    assert any(u < dp.kA and v < dp.kB for u, v, _ in hits)


def test_broken_curvature_breaks_b1_on_linear_pairs():
    dp = DoublePair(broken_m7())
    rep = check_bialgebroid(broken_m7(), dp)
    hits = [e.indices for e in rep.failures() if e.condition == "B1"]
    assert any(u1 < dp.kA and u2 < dp.kA for u1, u2, _, _ in hits)
    assert "B3" not in rep.failed_conditions()


@pytest.mark.parametrize("make", [broken_m6, broken_m7, lambda: tangent_double_matched_pair(tm2_input())])
def test_defect_scaling_identity(make):
    # moving a function through the second slot of the defect costs (B2) terms
    dp = DoublePair(make())
    ring = dp.ring
    f = ring.parse("x1*mu1 + x2")
    nB = dp.DB.rank
    for u1, u2 in itertools.combinations(range(dp.DA.rank), 2):
        X1, X2 = dp.DA.frame(u1), dp.DA.frame(u2)
        lhs = linalg.tsub(dp.defect(X1, linalg.tscale(f, X2)), linalg.tscale(f, dp.defect(X1, X2)))
        for v1, v2 in itertools.permutations(range(nB), 2):
            h1, h2 = dp.DB.frame(v1), dp.DB.frame(v2)
            rhs = (dp.pairing(X2, h1) * dp.b2(X1, h2, f)) - (dp.pairing(X2, h2) * dp.b2(X1, h1, f))
            assert lhs[v1][v2] == rhs, (u1, u2, v1, v2)


def test_b2_is_tensorial_in_second_slot(m6_pair):
    dp = m6_pair
    F = dp.ring.parse("x1 + mu2*x2")
    for u in range(dp.DA.rank):
        for v in range(dp.DB.rank):
            X, Y = dp.DA.frame(u), dp.DB.frame(v)
            for f in dp.ring.gens():
                assert dp.b2(X, linalg.tscale(F, Y), f) == F * dp.b2(X, Y, f)


def test_b2_is_a_derivation_in_the_function(m6_pair):
    dp = m6_pair
    f, g = dp.ring.parse("x1*mu1"), dp.ring.parse("x2 + mu2")
    for u in range(dp.DA.rank):
        for v in range(dp.DB.rank):
            X, Y = dp.DA.frame(u), dp.DB.frame(v)
            assert dp.b2(X, Y, f * g) == f * dp.b2(X, Y, g) + g * dp.b2(X, Y, f)


def test_theta_b_star_of_pulled_back_function(tm2_pair):
    dp, mp = tm2_pair, tm2_pair.mp
    f = mp.ring.parse("x1^2*x2 + 3*x2")
    beta = tuple(mp.B.rho(mp.B.frame(j))(f) for j in range(dp.kB))
    assert dp.theta_B_star(f) == dp.beta_dag(beta)


def test_theta_b_star_of_linear_function(tm2_pair):
    dp, mp = tm2_pair, tm2_pair.mp
    for m in range(dp.kC):
        c = mp.c(m)
        dA_c = linalg.matvec(mp.repB.partial, c, mp.ring)
        psi = [list(conn_apply(mp.nabla_BC, mp.B.frame(j), c)) for j in range(dp.kB)]
        expected = linalg.tadd(linalg.tneg(dp.sigmaA(dA_c)), dp.tilde_A(psi))
        assert dp.theta_B_star(dp.linear(c)) == expected


@pytest.mark.parametrize("name,mp", _fixture_pairs(), ids=lambda v: v if isinstance(v, str) else "")
def test_poisson_bracket_matches_table(name, mp):
    dp = DoublePair(mp)
    table = poisson_on_cstar(mp)
    gens = list(dp.ring.gens())
    for F, G in itertools.product(gens, repeat=2):
        assert str(dp.poisson_bracket(F, G)) == str(table.bracket(table.ring.embed(F), table.ring.embed(G)))


def test_oracle_agrees_on_broken_fixtures():
    for make in (broken_m1, broken_m6, broken_m7):
        res = oracle_equivalence(make())
        assert res.agree and not res.matched.passed
        assert res.summary()["agreement"] is True


def test_convention_fingerprint_is_stable():
    fp = convention_fingerprint()
    assert fp == convention_fingerprint()
    assert len(fp) == 16 and int(fp, 16) >= 0

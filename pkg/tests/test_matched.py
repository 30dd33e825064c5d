import itertools
import random

from dlalg import linalg
from dlalg.algebroid import Algebroid, bracket_sections, check_lie_algebroid
from dlalg.connection import Conn, conn_apply
from dlalg.fixtures import TANGENT_FIXTURES, broken_m6, random_splitting_change, tm2_input, vacant_flat
from dlalg.matched import (
    change_pair_splitting,
    check_matched,
    core_algebroid,
    first_failing_condition,
    poisson_on_cstar,
    same_algebroid,
    vacant_from_representations,
    with_repA,
)
from dlalg.polyring import VarRing
from dlalg.tangent import tangent_double_matched_pair

R1, R2 = VarRing.euclidean(1), VarRing.euclidean(2)


def test_zero_core_zero_data_passes():
    A = Algebroid.build(R2, [["0", "0"]])
    B = Algebroid.build(R2, [["0", "0"], ["0", "0"]])
    mp = vacant_from_representations(A, B, Conn.flat(A, 2), Conn.flat(B, 1))
    rep = check_matched(mp)
    assert rep.passed
    assert set(rep.conditions()) <= {"M5", "M7", "M8", "M9"}


def test_vacant_tangent_line_passes():
    T = Algebroid.tangent(1)
    assert check_matched(vacant_from_representations(T, T, Conn.flat(T, 1), Conn.flat(T, 1))).passed
    assert check_matched(vacant_flat()).passed


def test_vacant_with_mismatched_connections_fails_m5():
    T = Algebroid.tangent(2)
    nab = Conn.build(T, 2, [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "0"]]])
    mp = vacant_from_representations(T, T, nab, Conn.flat(T, 2))
    rep = check_matched(mp)
    assert first_failing_condition(rep) == "M5"


def test_shifted_curvature_breaks_m7():
    mp = tangent_double_matched_pair(tm2_input())
    R = {k: linalg.tadd(m, linalg.identity(R2, 2)) for k, m in mp.repA.R.items()}
    rep = check_matched(with_repA(mp, R=R))
    # (M7) shifts by d_A(Delta(a1, a2) b); (M6) also sees R_A through its right-hand side
    assert "M7" in rep.failed_conditions()
    for e in (e for e in rep.entries if e.condition == "M7"):
        _, _, j = e.indices
        # d_A = rho = Id here, so the residual is d_A(Delta(a1, a2) b_j) = b_j
        assert e.residual == linalg.unit(R2, 2, j)


def test_reports_list_conditions_in_order():
    rep = check_matched(tangent_double_matched_pair(tm2_input()))
    assert rep.conditions() == [f"M{i}" for i in range(1, 10)]
    assert len(rep.notes) == 2


def test_core_of_vacant_pair_is_rank_zero():
    assert core_algebroid(vacant_flat()).rank == 0


def test_core_antisymmetry_residual_is_m2_residual():
    mp = broken_m6()
    rep = check_matched(mp)
    core = core_algebroid(mp)
    for e in (e for e in rep.entries if e.condition == "M2"):
        p, q = e.indices
        anti = linalg.tadd(core.structure[p][q], core.structure[q][p])
        assert anti == e.residual
    assert "M2" in rep.failed_conditions()


def test_poisson_examples():
    mp = tangent_double_matched_pair(tm2_input())
    table = poisson_on_cstar(mp)
    ring = table.ring
    x1, x2 = ring.var("x1"), ring.var("x2")
    assert table.bracket(x1, x2).is_zero()
    l1 = table.linear(mp.c(0))
    assert table.bracket(l1, l1).is_zero()
    f = R2.parse("x1^2*x2")
    expect = mp.A.rho(mp.dA_of(mp.c(0)))(f)
    assert table.bracket(l1, table.pullback(f)) == ring.embed(expect)


def test_poisson_jacobi_and_linearity_when_matched():
    for make in TANGENT_FIXTURES.values():
        mp = tangent_double_matched_pair(make())
        table = poisson_on_cstar(mp)
        gens = table.ring.gens()
        for F, G, H in itertools.combinations(gens, 3):
            assert table.jacobiator(F, G, H).is_zero()
        core = core_algebroid(mp)
        for p, q in itertools.product(range(mp.rank_C), repeat=2):
            lhs = table.bracket(table.linear(mp.c(p)), table.linear(mp.c(q)))
            assert lhs == table.linear(core.bracket(mp.c(p), mp.c(q)))


def test_splitting_invariance():
    rng = random.Random(5)
    for make in TANGENT_FIXTURES.values():
        mp = tangent_double_matched_pair(make())
        core = core_algebroid(mp)
        for _ in range(2):
            moved = change_pair_splitting(mp, random_splitting_change(rng, mp))
            assert check_matched(moved).passed
            assert same_algebroid(core_algebroid(moved), core)


def _m6(mp, a, b, c):
    nAB, nAC, nBA, nBC = mp.nabla_AB, mp.nabla_AC, mp.nabla_BA, mp.nabla_BC
    lhs = conn_apply(nBC, b, conn_apply(nAC, a, c))
    lhs = linalg.tsub(lhs, conn_apply(nAC, a, conn_apply(nBC, b, c)))
    lhs = linalg.tsub(lhs, conn_apply(nAC, conn_apply(nBA, b, a), c))
    lhs = linalg.tadd(lhs, conn_apply(nBC, conn_apply(nAB, a, b), c))
    rhs = linalg.tsub(linalg.matvec(mp.repB.R_on(b, mp.dB_of(c)), a, mp.ring),
                      linalg.matvec(mp.repA.R_on(a, mp.dA_of(c)), b, mp.ring))
    return linalg.tsub(lhs, rhs)


def test_m6_residual_tensorial_in_core_argument():
    mp = broken_m6()
    f = R2.parse("x1^2 - x2 + 3")
    for i, j, m in itertools.product(range(2), repeat=3):
        a, b, c = mp.A.frame(i), mp.B.frame(j), mp.c(m)
        fc = tuple(f * x for x in c)
        assert _m6(mp, a, b, fc) == tuple(f * x for x in _m6(mp, a, b, c))


def test_core_anchor_maps_are_morphisms_when_matched():
    for make in TANGENT_FIXTURES.values():
        mp = tangent_double_matched_pair(make())
        core = core_algebroid(mp)
        assert check_lie_algebroid(core).passed
        for p, q in itertools.product(range(mp.rank_C), repeat=2):
            cp, cq = mp.c(p), mp.c(q)
            br = core.bracket(cp, cq)
            assert mp.dA_of(br) == bracket_sections(mp.A, mp.dA_of(cp), mp.dA_of(cq))
            assert mp.dB_of(br) == bracket_sections(mp.B, mp.dB_of(cp), mp.dB_of(cq))

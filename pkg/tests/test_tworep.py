import random

import pytest

from dlalg import linalg
from dlalg.algebroid import Algebroid
from dlalg.connection import Conn, curvature, dual_connection
from dlalg.fixtures import random_tworep, tm2_input
from dlalg.polyring import VarRing
from dlalg.tangent import tangent_prolongation_rep, tangent_rep
from dlalg.tworep import (
    NotVerified,
    SplittingChange,
    TwoRep,
    change_splitting,
    dual_tworep,
    same_tworep,
    structure_operator_check,
    validate_tworep,
)

R2 = VarRing.euclidean(2)
TM2 = Algebroid.tangent(2)
RICH = Conn.build(TM2, 2, [[["0", "x2"], ["1", "x1"]], [["x1^2", "0"], ["0", "x2"]]])


def identity_rep(conn=RICH) -> TwoRep:
    return TwoRep.build(TM2, linalg.identity(R2, conn.rank), conn, conn, curvature(conn))


def test_identity_rep_is_valid():
    assert validate_tworep(identity_rep()).passed
    assert structure_operator_check(identity_rep()).passed


def test_plain_representation_needs_flatness():
    flat = TwoRep.build(TM2, linalg.mzero(R2, 1, 0), Conn.flat(TM2, 0), Conn.build(TM2, 1, [[["x2"]], [["x1"]]]))
    assert validate_tworep(flat).passed
    curved = TwoRep.build(TM2, linalg.mzero(R2, 1, 0), Conn.flat(TM2, 0), Conn.build(TM2, 1, [[["x2"]], [["0"]]]))
    rep = validate_tworep(curved)
    assert not rep.passed and rep.failed_conditions() == ["curvature-E1"]
    assert not structure_operator_check(curved).passed


def test_mismatched_connections_fail_intertwining():
    c0 = Conn.build(TM2, 1, [[["1"]], [["0"]]])
    c1 = Conn.flat(TM2, 1)
    t = TwoRep.build(TM2, ((R2.one(),),), c0, c1)
    rep = validate_tworep(t)
    assert "d-intertwines" in rep.failed_conditions()
    assert not structure_operator_check(t).passed


def test_zero_data_passes_both():
    A = Algebroid.build(R2, [["0", "0"], ["0", "0"]])
    t = TwoRep.build(A, linalg.mzero(R2, 2, 1), Conn.flat(A, 1), Conn.flat(A, 2))
    assert validate_tworep(t).passed and structure_operator_check(t).passed
    assert same_tworep(dual_tworep(t), TwoRep.build(A, linalg.mzero(R2, 1, 2), Conn.flat(A, 2), Conn.flat(A, 1)))


def test_dual_of_identity_rep():
    t = identity_rep()
    d = dual_tworep(t)
    star = dual_connection(RICH)
    assert d.partial == linalg.identity(R2, 2)
    assert d.conn0.christoffel == star.christoffel == d.conn1.christoffel
    for k, m in t.R.items():
        assert d.R[k] == linalg.tneg(linalg.transpose_to(m, 2, 2))
    assert validate_tworep(d).passed


def test_dual_is_involution_and_requires_validity():
    t = tangent_prolongation_rep(tm2_input())
    assert same_tworep(dual_tworep(dual_tworep(t)), t)
    broken = TwoRep.build(TM2, ((R2.one(),),), Conn.build(TM2, 1, [[["1"]], [["0"]]]), Conn.flat(TM2, 1))
    with pytest.raises(NotVerified):
        dual_tworep(broken)


def _phi(t: TwoRep, texts) -> SplittingChange:
    return SplittingChange.build(t, texts)


def test_change_splitting_zero_roundtrip_and_validity():
    t = tangent_rep(tm2_input())
    zero = _phi(t, [[["0", "0"], ["0", "0"]]] * 2)
    assert same_tworep(change_splitting(t, zero), t)
    phi = _phi(t, [[["x1", "0"], ["1", "x2^2"]], [["0", "x1*x2"], ["2", "0"]]])
    moved = change_splitting(t, phi)
    assert not same_tworep(moved, t)
    assert validate_tworep(moved).passed
    assert same_tworep(change_splitting(moved, -phi), t)


def test_change_splitting_shape_checked():
    t = tangent_rep(tm2_input())
    with pytest.raises(ValueError):
        SplittingChange.build(t, [[["0"]]])


def test_characterizations_agree_on_random_reps():
    rng = random.Random(2024)
    for _ in range(40):
        t = random_tworep(rng, valid=rng.random() < 0.5)
        assert validate_tworep(t).passed == structure_operator_check(t).passed


def test_change_splitting_preserves_verdict_on_random_reps():
    rng = random.Random(99)
    for _ in range(15):
        t = random_tworep(rng, valid=rng.random() < 0.5)
        if not (t.r0 and t.r1 and t.algebroid.rank):
            continue
        phi = SplittingChange(tuple(
            tuple(tuple(t.ring.zero() if rng.random() < 0.5 else t.ring.parse("x1 - 1") for _ in range(t.r0))
                  for _ in range(t.r1))
            for _ in range(t.algebroid.rank)))
        assert validate_tworep(change_splitting(t, phi)).passed == validate_tworep(t).passed

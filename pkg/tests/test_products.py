import pytest

from zigzag_hh.algebra import L1, L2, algebra_for
from zigzag_hh.complexes import complexes_for
from zigzag_hh.products import (UnknownClass, cup_cochains, cup_coherence, cup_via_diagonal,
                                diagonal, diagonal_chain_map_defect, nilpotent_quotient,
                                parse_terms, parse_word, ring_for, verify_presentation)
from zigzag_hh.scalars import make_field


def test_diagonal_examples():
    F = make_field("generic")
    assert diagonal(F, 0, 1, 0) == ((0, (1, 0), (1, 0), F.one),)
    assert [(s, c) for s, _, _, c in diagonal(F, 1, 1, 1)] == [(0, F.one), (1, F.one)]
    coeffs = sorted((s, g1[1]) for s, g1, _, c in diagonal(F, 2, 1, 1))
    assert coeffs == [(0, 0), (1, 0), (1, 1), (2, 1)]
    assert dict(((s, g1[1]), c) for s, g1, _, c in diagonal(F, 2, 1, 1))[(1, 0)] == F.q


def test_diagonal_chain_map(field):
    A = algebra_for(field)
    for m in range(1, 11):
        assert diagonal_chain_map_defect(A, m) == []


def test_generic_u2_u1():
    F = make_field("generic")
    R = ring_for(F)
    x = R.cup(R.gen("u2"), R.gen("u1"))
    target = R.cls(2, {(L1, 1, 1): F.one, (L2, 2, 1): F.one})
    assert x.coords == target.coords
    assert R.render(x) == "-u1*u2"


def test_unit_and_z_products(field):
    R = ring_for(field)
    unit = R.gen("1")
    for m in range(5):
        for x in complexes_for(field).hh_basis(m):
            assert R.cup(unit, x).coords == x.coords
    for a in ("z1", "z2"):
        for b in ("z1", "z2"):
            assert R.cup(R.gen(a), R.gen(b)).is_zero()


def test_cochain_cup_of_z_and_u_vanishes_generic():
    F = make_field("generic")
    A = algebra_for(F)
    R = ring_for(F)
    z, u = R.pres.gen("z1").cochain, R.pres.gen("u1").cochain
    assert cup_via_diagonal(A, z, 0, u, 1) == {} == cup_cochains(A, z, 0, u, 1)


def test_presentation_examples():
    R = ring_for(make_field("rational:-1/1"))
    assert R.parse("u1*u2 + z1*w0").is_zero()
    R3 = ring_for(make_field("zeta:3"))
    assert R3.parse("w1*w1 - w0*w2").is_zero()
    G = ring_for(make_field("generic"))
    for u in ("u1", "u2"):
        assert G.cup(G.gen(u), G.gen(u)).is_zero()


def test_verify_presentation(field):
    rep = verify_presentation(field, 10)
    assert rep["ok"], rep


def test_nilpotent_quotient(field):
    rep = nilpotent_quotient(field, 8)
    assert rep["ok"], rep
    if field.classify().kind == "pm1":
        assert rep["quotient_dims"][:5] == [1, 0, 3, 0, 5]
    if field.classify().kind == "generic":
        assert rep["quotient_dims"] == [1] + [0] * 8


def test_zeta4_w_relation():
    F = make_field("zeta:4")
    R = ring_for(F)
    assert R.pres.w_relation[0] == F.q_pow(4)


def test_cup_coherence(field):
    rep = cup_coherence(field, 10)
    assert rep["ok"], {k: v for k, v in rep.items() if k != "ok"}


def test_parse():
    assert parse_word("u1*w0") == ("u1", "w0")
    assert parse_word("u1u2") == ("u1", "u2")
    assert parse_word("1") == ("1",)
    assert [c for c, _ in parse_terms("2*u1 - 1/2 u2")] == [2, -0.5]
    R = ring_for(make_field("generic"))
    with pytest.raises(UnknownClass):
        R.parse("w0")
    with pytest.raises(ValueError):
        R.parse("u1 + u1u2")

import pytest

from zigzag_hh.algebra import A1, A2, B1, B2, E1, E2, algebra_for
from zigzag_hh.bv import (bracket, bv_delta, bv_for, chain_map_laws, delta_squared,
                          gerstenhaber_ideal_quotient, gerstenhaber_laws, homotopy_laws,
                          homotopy_s, homotopy_t, phi, psi, psi_phi_identity, verify_bv_tables,
                          verify_psi_cases, DegreeZero)
from zigzag_hh.products import ring_for
from zigzag_hh.resolution import generator
from zigzag_hh.scalars import make_field


def gen_A(spec="generic"):
    F = make_field(spec)
    return F, algebra_for(F)


def test_t_examples():
    F, A = gen_A()
    assert homotopy_t(A, 0, {(B1, 1, 0, E1): F.one}) == generator(A, 1, 2, 0)
    for m in range(1, 6):
        assert homotopy_t(A, m, generator(A, m, 1, 1)) == {}
    assert homotopy_t(A, -1, {E1: F.one}) == generator(A, 0, 1, 0)


def test_s_examples():
    F, A = gen_A()
    assert homotopy_s(A, -1, {E1: F.one}) == {(E1, (), E1): F.one}
    once = homotopy_s(A, 1, {(A2, (B2,), E2): F.one})
    assert homotopy_s(A, 2, once) == {}


def test_phi_examples():
    F, A = gen_A()
    assert phi(A, 1, generator(A, 1, 1, 1)) == {(E1, (A1,), E2): F.one}
    assert phi(A, 0, generator(A, 0, 2, 0)) == {(E2, (), E2): F.one}


def test_psi_examples():
    F, A = gen_A()
    assert psi(A, 1, {(E1, (A1,), E2): F.one}) == generator(A, 1, 1, 1)
    assert psi(A, 1, {(E2, (B1,), E1): F.one}) == generator(A, 1, 2, 0)
    got = psi(A, 2, {(E2, (B1, A1), E2): F.one})
    assert got == generator(A, 2, 2, 1, F.q_pow(-1))
    for m in range(1, 7):
        seq = tuple(B1 if k % 2 == 0 else B2 for k in range(m))
        end = E1 if m % 2 else E2
        assert psi(A, m, {(E2, seq, end): F.one}) == generator(A, m, 2, 0)


@pytest.mark.parametrize("spec,arg,value", [
    ("rational:-1/1", "u2", "1"),
    ("rational:-1/1", "u3", "1"),
    ("generic", "u1u2", "u2-u1"),
    ("zeta:3", "u1w0", "7*w0"),
    ("rational:1/1", "z1w0", "-2*u1"),
    ("zeta:4", "u1w1", "3*w1"),
])
def test_delta_examples(spec, arg, value):
    R = ring_for(make_field(spec))
    assert bv_delta(R.parse(arg)).coords == R.parse(value).coords


def test_delta_degree_zero():
    R = ring_for(make_field("generic"))
    with pytest.raises(DegreeZero):
        bv_delta(R.gen("z1"))


@pytest.mark.parametrize("spec,x,y,value", [
    ("rational:-1/1", "z1", "u2", "-z1"),
    ("rational:-1/1", "z1", "u3", "-z1"),
    ("rational:-1/1", "u1", "u2", "u1"),
    ("rational:-1/1", "u4", "w0", "2*w1"),
    ("rational:1/1", "u1", "w1", "-w0"),
    ("zeta:3", "u1", "w0", "-6*w0"),
    ("zeta:4", "u1", "w0", "-4*w0"),
])
def test_bracket_examples(spec, x, y, value):
    R = ring_for(make_field(spec))
    assert bracket(R.parse(x), R.parse(y)).coords == R.parse(value).coords


def test_generic_z_u_brackets():
    R = ring_for(make_field("generic"))
    for z in ("z1", "z2"):
        for u in ("u1", "u2"):
            assert bracket(R.gen(z), R.gen(u)).coords == R.scale(-R.F.one, R.gen(z)).coords


def test_bracket_degree_zero_pair_is_zero(field):
    R = ring_for(field)
    out = bracket(R.gen("z1"), R.gen("1"))
    assert out.degree == 0 and out.is_zero()


def test_even_self_bracket_vanishes(field):
    R = ring_for(field)
    for g in R.pres.generators:
        if g.degree and g.degree % 2 == 0 and g.degree <= 4:
            x = R.gen(g.name)
            assert bracket(x, x).is_zero()


def test_delta_kills_unit(field):
    R = ring_for(field)
    assert bv_for(field).delta_or_zero(R.gen("1")) is None


@pytest.mark.parametrize("spec", ["generic", "rational:1/1", "rational:-1/1", "zeta:4"])
def test_tables(spec):
    rep = verify_bv_tables(make_field(spec))
    assert rep["ok"] and rep["mismatches"] == 0, [e for e in rep["entries"] if e["status"] != "match"]


def test_table_sizes():
    rep = verify_bv_tables(make_field("rational:-1/1"), adjudicate=False)
    assert rep["nonzero_checked"] == 39


def test_delta_squared(field):
    assert delta_squared(field, 6)["ok"]


def test_psi_phi_identity(field):
    assert psi_phi_identity(field, 6)["ok"]


def test_homotopy_laws(field):
    rep = homotopy_laws(field, 8, 6)
    assert rep["ok"], rep


def test_chain_maps(field):
    rep = chain_map_laws(field, 8)
    assert rep["ok"], rep


def test_psi_case_list(field):
    rep = verify_psi_cases(field, 5)
    assert rep["ok"] and rep["unlisted_nonzero"] == [], rep["mismatches"]


@pytest.mark.parametrize("spec,bound", [
    ("generic", None), ("rational:1/1", None), ("rational:-1/1", None),
    ("zeta:3", 10), ("zeta:4", 10), ("zeta:6", 10),
])
def test_gerstenhaber_laws(spec, bound):
    rep = gerstenhaber_laws(make_field(spec), bound)
    assert rep["ok"]
    assert rep["leibniz"]


@pytest.mark.parametrize("spec", ["generic", "zeta:3", "zeta:5"])
def test_gerstenhaber_ideal(spec):
    rep = gerstenhaber_ideal_quotient(make_field(spec), 8)
    assert rep["ok"] and rep["quotient_dims"] == [1] + [0] * 8

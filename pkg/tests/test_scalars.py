from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from zigzag_hh.scalars import (BadOrder, QSpec, QSpecError, ZeroQ, classify_q, make_field,
                               parse_qspec, q_pow)


def test_root_of_unity_field():
    F = make_field(QSpec.root_of_unity(3))
    assert F.q ** 3 == F.one
    assert F.q != F.one


def test_rational_field():
    F = make_field(QSpec.rational(2))
    assert F.q == F(2)
    assert F.fmt(F(Fraction(3, 4))) == "3/4"


def test_generic_q_is_not_a_root():
    F = make_field("generic")
    assert F.q * F.q - F.one != F.zero


def test_errors():
    with pytest.raises(ZeroQ):
        make_field(QSpec.rational(0))
    with pytest.raises(BadOrder):
        make_field(QSpec.root_of_unity(0))
    for bad in ("rational:1/0", "zeta:x", "complex:1", "rational:abc"):
        with pytest.raises(QSpecError):
            parse_qspec(bad)


def test_q_pow_examples():
    F = make_field("zeta:4")
    assert q_pow(F, 6) == F.q ** 2
    assert q_pow(make_field("rational:2/1"), -1) == make_field("rational:2/1")(Fraction(1, 2))
    G = make_field("generic")
    assert G.fmt(q_pow(G, 3)) == "q^3"
    assert G.fmt(q_pow(G, -2)) == "1/q^2"


@pytest.mark.parametrize("spec,expected", [
    ("rational:-1/1", "QisPlusMinusOne"),
    ("zeta:6", "PrimitiveRoot(6)"),
    ("rational:3/2", "NotRootOfUnity"),
    ("zeta:1", "QisPlusMinusOne"),
    ("zeta:2", "QisPlusMinusOne"),
    ("generic", "NotRootOfUnity"),
])
def test_classify(spec, expected):
    assert str(classify_q(make_field(spec))) == expected


@pytest.mark.parametrize("s", range(1, 13))
def test_primitivity(s):
    F = make_field(QSpec.root_of_unity(s))
    assert F.q_pow(s) == F.one
    assert all(F.q_pow(t) != F.one for t in range(1, s))


def test_cyclotomic_output_is_polynomial_in_z():
    F = make_field("zeta:5")
    assert F.fmt(F.q ** 4) == "-z^3 - z^2 - z - 1"


def test_spec_round_trip():
    for text in ("generic", "rational:-3/7", "zeta:12"):
        assert str(parse_qspec(text)) == text


small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def _element(F, coeffs):
    x = F.zero
    for k, c in enumerate(coeffs):
        x = x + F(c) * F.q_pow(k)
    return x


def _elements(spec):
    F = make_field(spec)
    return st.lists(small, min_size=1, max_size=4).map(lambda cs: _element(F, cs))


@pytest.mark.parametrize("spec", ["generic", "rational:5/3", "zeta:5", "zeta:12"])
def test_field_axioms(spec):
    F = make_field(spec)
    elems = _elements(spec)

    @settings(max_examples=40, deadline=None)
    @given(elems, elems, elems)
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == F.zero
        assert F.is_zero(a - a)
        if not F.is_zero(a):
            assert a * (F.one / a) == F.one
        # canonical form: two arithmetic paths to the same value compare equal
        assert (a + b) * (a - b) == a * a - b * b

    check()

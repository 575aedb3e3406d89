import itertools

import pytest

from zigzag_hh.algebra import (A1, A2, B1, B2, BASIS, E1, E2, L1, L2, algebra_for, form, multiply,
                               nakayama, tilde)
from zigzag_hh.linalg import rank
from zigzag_hh.scalars import make_field


@pytest.fixture
def A(field):
    return algebra_for(field)


def el(A, b, c=None):
    return {b: A.F.one if c is None else c}


def test_product_examples():
    A = algebra_for(make_field("generic"))
    F = A.F
    assert multiply(A, el(A, A1), el(A, B1)) == el(A, L1)
    assert multiply(A, el(A, B2), el(A, A2)) == {L1: -F.q_pow(-1)}
    assert multiply(A, el(A, A1), el(A, A2)) == {}


def test_associativity(A):
    for x, y, z in itertools.product(BASIS, repeat=3):
        lhs = multiply(A, multiply(A, el(A, x), el(A, y)), el(A, z))
        rhs = multiply(A, el(A, x), multiply(A, el(A, y), el(A, z)))
        assert lhs == rhs


def test_relations_vanish(A):
    q = A.F.q

    def p(x, y):
        return multiply(A, el(A, x), el(A, y))

    def add(u, v, c):
        out = dict(u)
        for k, w in v.items():
            out[k] = out.get(k, A.F.zero) + c * w
        return {k: w for k, w in out.items() if w}

    assert p(A1, A2) == {} and p(A2, A1) == {} and p(B1, B2) == {} and p(B2, B1) == {}
    assert add(p(A1, B1), p(B2, A2), q) == {}
    assert add(p(A2, B2), p(B1, A1), q) == {}


def test_nakayama_examples():
    A = algebra_for(make_field("generic"))
    F = A.F
    assert nakayama(A, el(A, A1)) == {A1: -F.q}
    assert nakayama(A, el(A, E1)) == el(A, E1)
    assert nakayama(A, el(A, B2)) == {B2: -F.q_pow(-1)}


def test_nakayama_automorphism_and_frobenius(A):
    for x, y in itertools.product(BASIS, repeat=2):
        X, Y = el(A, x), el(A, y)
        assert nakayama(A, multiply(A, X, Y)) == multiply(A, nakayama(A, X), nakayama(A, Y))
        assert form(A, X, Y) == form(A, Y, nakayama(A, X))
    assert nakayama(A, {E1: A.F.one, E2: A.F.one}) == {E1: A.F.one, E2: A.F.one}


def test_form_examples():
    A = algebra_for(make_field("generic"))
    assert form(A, el(A, A1), el(A, B1)) == A.F.one
    assert form(A, el(A, B1), el(A, A1)) == -A.F.q_pow(-1)
    assert form(A, el(A, E1), el(A, E2)) == A.F.zero


def test_gram_nondegenerate_and_tilde_dual(A):
    gram = {c: {r: form(A, el(A, r), el(A, c)) for r in BASIS if form(A, el(A, r), el(A, c))}
            for c in BASIS}
    assert rank(gram) == 8
    for a in BASIS:
        for b in BASIS:
            want = A.F.one if a == b else A.F.zero
            assert form(A, el(A, a), tilde(A, b)) == want


def test_tilde_examples():
    A = algebra_for(make_field("generic"))
    assert tilde(A, B1) == {A1: -A.F.q}
    assert tilde(A, E2) == el(A, L2)
    assert tilde(A, L2) == el(A, E2)


def test_symmetric_at_minus_one():
    A = algebra_for(make_field("rational:-1/1"))
    for x, y in itertools.product(BASIS, repeat=2):
        assert form(A, el(A, x), el(A, y)) == form(A, el(A, y), el(A, x))
    star = {A1: B1, B1: A1, A2: B2, B2: A2, E1: L1, L1: E1, E2: L2, L2: E2}
    for x, y in itertools.product(BASIS, repeat=2):
        expected = A.F.one if star[x] == y else A.F.zero
        assert form(A, el(A, x), el(A, y)) == expected

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nlie.linalg import (
    GF,
    QQ,
    Field,
    Singular,
    Subspace,
    complement_basis,
    contains,
    det,
    identity,
    intersect,
    invert,
    matmul,
    nullspace,
    rank,
    rref,
    span,
    subspace_sum,
)


def all_vectors(F, d):
    return itertools.product(list(F.elements()), repeat=d)


def test_field_parse_and_format():
    assert Field.parse("Q") == QQ
    assert Field.parse("GF(7)") == GF(7)
    assert str(GF(3)) == "GF(3)"
    with pytest.raises(ValueError):
        Field.parse("GF(6)")
    assert QQ.format_scalar(Fraction(-3, 4)) == "-3/4"
    assert QQ.parse_scalar("-3/4") == Fraction(-3, 4)
    assert GF(5).parse_scalar("1/2") == 3


def test_rref_identity_and_zero():
    I3 = identity(QQ, 3)
    assert rref(QQ, I3) == (I3, 3)
    Z = [[QQ.zero] * 4 for _ in range(2)]
    red, r = rref(QQ, Z)
    assert r == 0 and red == Z


def test_rref_hand_example():
    red, r = rref(QQ, [[2, 4], [1, 2]])
    assert r == 1
    assert red == [[1, 2], [0, 0]]


def test_nullspace_examples():
    assert nullspace(QQ, identity(QQ, 3)).dim == 0
    assert nullspace(QQ, [[0] * 3 for _ in range(3)]).dim == 3
    N = nullspace(GF(2), [[1, 1, 0]])
    assert N.dim == 2
    assert N.contains((1, 1, 0))
    # enumerate GF(2)^3
    brute = [v for v in all_vectors(GF(2), 3) if (v[0] + v[1]) % 2 == 0]
    assert sorted(brute) == sorted(v for v in all_vectors(GF(2), 3) if N.contains(v))


def test_invert_examples():
    assert invert(QQ, identity(QQ, 2)) == identity(QQ, 2)
    assert invert(GF(5), [[2]]) == [[3]]
    assert invert(QQ, [[1, 1], [0, 1]]) == [[1, -1], [0, 1]]
    with pytest.raises(Singular):
        invert(QQ, [[1, 2], [2, 4]])


def test_subspace_ops_gf2():
    F = GF(2)
    S = span(F, 3, [(1, 0, 0), (1, 1, 0)])
    T = span(F, 3, [(0, 1, 0), (0, 0, 1)])
    assert intersect(S, T) == span(F, 3, [(0, 1, 0)])
    assert subspace_sum(S, T).dim == 3
    assert contains(S, (0, 1, 0)) and not contains(S, (0, 0, 1))
    comp = complement_basis(S)
    assert subspace_sum(S, span(F, 3, comp)).dim == 3 and len(comp) == 1


def test_intersection_matches_enumeration():
    F = GF(3)
    S = span(F, 4, [(1, 2, 0, 1), (0, 1, 1, 0)])
    T = span(F, 4, [(1, 0, 1, 1), (0, 0, 1, 2), (1, 1, 1, 1)])
    brute = {v for v in all_vectors(F, 4) if S.contains(v) and T.contains(v)}
    I = S & T
    assert brute == {v for v in all_vectors(F, 4) if I.contains(v)}


small = st.integers(min_value=-3, max_value=3)


@st.composite
def rational_matrices(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[Fraction(draw(small), draw(st.integers(1, 3))) for _ in range(c)] for _ in range(r)]


@settings(max_examples=60, deadline=None)
@given(rational_matrices())
def test_rank_nullity(m):
    assert rank(QQ, m) + nullspace(QQ, m).dim == len(m[0])


@settings(max_examples=60, deadline=None)
@given(rational_matrices(), st.sampled_from([2, 3, 5]))
def test_rank_nullity_mod_p(m, p):
    F = GF(p)
    mm = [[F(x.numerator) for x in row] for row in m]
    N = nullspace(F, mm)
    assert rank(F, mm) + N.dim == len(m[0])
    for v in N.basis:
        assert all(sum(a * b for a, b in zip(row, v)) % p == 0 for row in mm)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda d: st.lists(st.lists(small, min_size=d, max_size=d), min_size=d, max_size=d)))
def test_inverse_or_singular(m):
    if det(QQ, m) == 0:
        with pytest.raises(Singular):
            invert(QQ, m)
    else:
        assert matmul(QQ, m, invert(QQ, m)) == identity(QQ, len(m))


def test_subspace_canonical():
    a = Subspace.span(QQ, 3, [(1, 1, 0), (0, 1, 1)])
    b = Subspace.span(QQ, 3, [(1, 0, -1), (2, 3, 1)])
    assert a == b

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from nlie import GF, QQ, NLieAlgebra
from nlie.algebra import (
    NotCentral,
    apply_basis_change,
    central_extension,
    center,
    check_alternating,
    check_filippov,
    derived_series,
    direct_sum,
    is_class_two,
    nilpotency_class,
    perm_sign,
    quotient_central,
    upper_central_series,
)
from nlie.catalog import Label, abelian, build, heisenberg
from nlie.linalg import Subspace, invert
from nlie.randgen import random_invertible


def two_lie_counterexample():
    return NLieAlgebra.from_table(2, 3, QQ, {(1, 2): {3: 1}, (1, 3): {1: 1}})


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((2, 0, 1)) == 1


def test_bracket_is_alternating_multilinear():
    a = build(Label("A", (3, 8, 4)), QQ)
    e = [a.unit(i) for i in range(8)]
    assert a.bracket(e[0], e[1], e[2]) == e[5]
    assert a.bracket(e[1], e[0], e[2]) == tuple(-x for x in e[5])
    assert a.bracket(e[0], e[0], e[2]) == tuple([0] * 8)
    v = tuple(x + 2 * y for x, y in zip(e[0], e[3]))
    # [e1 + 2 e4, e2, e3] = e6 + 2 [e4, e2, e3] = e6 + 2 e7
    assert a.bracket(v, e[1], e[2]) == tuple(x + 2 * y for x, y in zip(e[5], e[6]))


def test_filippov_counterexample():
    a = two_lie_counterexample()
    assert check_alternating(a)
    res = check_filippov(a)
    assert not res
    assert (res.x, res.y) == ((1, 2), (3,))
    assert list(res.lhs) == [0, 0, 0]
    assert list(res.rhs) == [0, 0, 1]


def test_filippov_passes_for_catalog_sample():
    assert check_filippov(build(Label("A387"), GF(2)))
    assert check_filippov(NLieAlgebra.abelian(3, 5, QQ))


def test_series_and_class():
    h = build(heisenberg(3, 1), QQ)
    assert is_class_two(h)
    assert nilpotency_class(h) == 2
    assert nilpotency_class(NLieAlgebra.abelian(3, 4, QQ)) == "abelian"
    assert not is_class_two(NLieAlgebra.abelian(3, 4, QQ))
    b = NLieAlgebra.from_table(2, 2, QQ, {(1, 2): {2: 1}})
    assert not is_class_two(b)
    assert nilpotency_class(b) is None
    rep = upper_central_series(build(Label("A", (3, 8, 5)), QQ))
    assert list(rep.central_dims) == [0, 3, 8]
    assert list(derived_series(build(Label("A", (3, 8, 5)), QQ)).derived_dims) == [8, 3, 0]


def test_class_three_entry():
    a = build(Label("A", (3, 5, 1)), QQ)
    assert nilpotency_class(a) == 3


def test_direct_sum_structure():
    a = direct_sum(build(heisenberg(3, 1), QQ), NLieAlgebra.abelian(3, 4, QQ))
    assert (a.d, a.derived.dim, a.center.dim) == (8, 1, 5)
    f = direct_sum(NLieAlgebra.abelian(3, 2, QQ), NLieAlgebra.abelian(3, 3, QQ))
    assert f.d == 5 and f.is_abelian


def test_center_commutes_with_direct_sum():
    a = build(Label("A", (3, 7, 1)), GF(3))
    b = build(heisenberg(3, 1), GF(3))
    s = direct_sum(a, b)
    assert s.center.dim == a.center.dim + b.center.dim
    assert s.derived.dim == a.derived.dim + b.derived.dim


def test_basis_change_identity_and_shear():
    F = QQ
    mixed = NLieAlgebra.from_table(3, 8, F, {(4, 5, 6): {8: 1}, (1, 2, 3): {8: 1, 7: 1}})
    I = [[F.one if i == j else F.zero for j in range(8)] for i in range(8)]
    assert apply_basis_change(mixed, I) == mixed
    P = [row[:] for row in I]
    P[7][6] = F.one  # e'_7 = e_7 + e_8
    out = apply_basis_change(mixed, P)
    assert out.table() == {(1, 2, 3): {7: 1}, (4, 5, 6): {8: 1}}
    assert out == build(Label("A387"), F)


def test_swap_on_a381_gives_a387():
    F = QQ
    swap = [[F.one if j == {6: 7, 7: 6}.get(i, i) else F.zero for j in range(8)] for i in range(8)]
    assert apply_basis_change(build(Label("A381"), F), swap) == build(Label("A387"), F)


def test_quotient_central():
    a = build(Label("A387"), QQ)
    e8 = Subspace.span(QQ, 8, [a.unit(7)])
    q, _ = quotient_central(a, e8)
    assert q.d == 7 and q.derived.dim == 1
    h = build(heisenberg(4, 1), QQ)
    q, _ = quotient_central(h, h.center)
    assert q.is_abelian and q.d == 4
    with pytest.raises(NotCentral):
        quotient_central(h, Subspace.span(QQ, 5, [h.unit(0)]))


def _presentation_h_f3(n, F):
    # [e1..en] = e_{n+4}; e_{n+1}, e_{n+2}, e_{n+3} span the abelian summand
    return NLieAlgebra.from_table(n, n + 4, F, {tuple(range(1, n + 1)): {n + 4: 1}})


@pytest.mark.parametrize("n", [3, 4, 5])
def test_central_extension_examples(n):
    q = _presentation_h_f3(n, QQ)
    a2 = central_extension(q, {tuple(range(3, n + 3)): 1})
    assert a2 == build(Label("A", (n, n + 5, 2)), QQ)
    a1 = central_extension(q, {tuple(range(2, n + 2)): 1})
    assert a1 == build(Label("A", (n, n + 5, 1)), QQ)
    triv = central_extension(q, {})
    assert triv.center.dim == q.center.dim + 1


def test_extension_then_quotient_roundtrip():
    q = build(Label("A", (3, 7, 1)), GF(5))
    a = central_extension(q, {(1, 2, 5): 3, (1, 4, 5): 1})
    line = Subspace.span(GF(5), 8, [a.unit(7)])
    back, _ = quotient_central(a, line)
    assert back == q


@st.composite
def class_two_tables(draw):
    """Random tables whose values lie in span(e_{m+1..d}) and never use those indices as arguments."""
    n = draw(st.integers(2, 4))
    m = draw(st.integers(n, n + 2))
    z = draw(st.integers(1, 3))
    p = draw(st.sampled_from([2, 3, 5]))
    F = GF(p)
    table = {}
    for key in combinations(range(1, m + 1), n):
        coords = {m + j: draw(st.integers(0, p - 1)) for j in range(1, z + 1)}
        coords = {k: v for k, v in coords.items() if v}
        if coords:
            table[key] = coords
    return NLieAlgebra.from_table(n, m + z, F, table)


@settings(max_examples=40, deadline=None)
@given(class_two_tables(), st.integers(0, 2**32 - 1))
def test_class_two_properties(a, seed):
    assert check_filippov(a)
    if a.is_abelian:
        return
    assert is_class_two(a)
    assert derived_series(a).derived_dims[-1] == 0
    assert upper_central_series(a).central_dims[-1] == a.d
    rng = random.Random(seed)
    P = random_invertible(a.field, a.d, rng)
    b = apply_basis_change(a, P)
    assert (b.derived.dim, b.center.dim, nilpotency_class(b)) == (a.derived.dim, a.center.dim, nilpotency_class(a))
    assert apply_basis_change(b, invert(a.field, P)) == a


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_extension_quotient_property(seed):
    rng = random.Random(seed)
    F = GF(rng.choice([2, 3, 5]))
    q = build(rng.choice([heisenberg(3, 1, 3), Label("A", (3, 7, 1)), Label("A", (3, 7, 2))]), F)
    free = [i + 1 for i in range(q.d) if i not in q.derived.pivots]
    coc = {t: F(rng.randrange(F.p)) for t in combinations(free, 3)}
    a = central_extension(q, coc)
    back, _ = quotient_central(a, Subspace.span(F, a.d, [a.unit(a.d - 1)]))
    assert back == q


def test_center_function_matches_property():
    a = build(Label("A", (4, 9, 6)), GF(3))
    assert center(a) == a.center

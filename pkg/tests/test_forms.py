from __future__ import annotations

import random

from nlie import GF, QQ
from nlie.algebra import apply_basis_change
from nlie.catalog import Label, build, heisenberg
from nlie.forms import (
    binary_roots,
    centroid,
    combine,
    decomposable_basis,
    form_eval,
    form_kernel,
    graded_view,
    heisenberg_blocks,
    heisenberg_generators,
    is_decomposable,
    plucker_quadric,
    target_kind,
)
from nlie.randgen import random_invertible


def test_binary_roots():
    F = QQ
    assert binary_roots(F, 0, 0, 0) is None
    assert binary_roots(F, 1, 0, -1) == [(1, 1), (-1, 1)]
    assert binary_roots(F, 1, 0, 1) == []
    assert binary_roots(F, 0, 1, 0) == [(1, 0), (0, 1)]
    # x^2 + xy + y^2 has no roots over GF(2) and a double root over GF(3)
    assert binary_roots(GF(2), 1, 1, 1) == []
    assert binary_roots(GF(3), 1, 1, 1) == [(1, 1)]


def test_decomposability_in_four_variables():
    F = QQ
    e12 = {(0, 1): 1}
    e12_34 = {(0, 1): 1, (2, 3): 1}
    assert is_decomposable(F, 4, 2, e12)
    assert not is_decomposable(F, 4, 2, e12_34)
    assert form_kernel(F, 4, 2, [e12]).dim == 2
    # e1^e2 + e1^e3 = e1^(e2+e3)
    assert is_decomposable(F, 4, 2, {(0, 1): 1, (0, 2): 1})


def test_plucker_quadric_vanishes_on_decomposable_span():
    F = GF(3)
    assert plucker_quadric(F, 4, 2, [{(0, 1): 1}, {(0, 2): 1}]) is None
    assert plucker_quadric(F, 4, 2, [{(0, 1): 1}, {(2, 3): 1}]) is not None


def test_form_eval_sign():
    F = QQ
    f = {(0, 1, 2): 1}
    e = [tuple(1 if i == j else 0 for i in range(3)) for j in range(3)]
    assert form_eval(F, f, [e[0], e[1], e[2]]) == 1
    assert form_eval(F, f, [e[1], e[0], e[2]]) == -1
    assert form_eval(F, f, [e[0], e[0], e[2]]) == 0


def test_graded_view_of_a384():
    v = graded_view(build(Label("A", (3, 8, 4)), QQ))
    assert (v.m, v.k) == (4, 3)  # e5 is central
    assert all(len(f) == 1 for f in v.forms)


def test_pencil_basis_for_split_pencil():
    F = GF(5)
    forms = [{(0, 1, 2): 1, (3, 4, 5): 1}, {(3, 4, 5): 1}]
    assert target_kind(F, 6, 3, forms) == "pencil"
    basis = decomposable_basis(F, 6, 3, forms, "pencil")
    assert basis is not None and len(basis) == 2
    assert all(is_decomposable(F, 6, 3, g) for g in basis)
    assert sorted(map(sorted, basis)) == [[(0, 1, 2)], [(3, 4, 5)]]


def test_centroid_of_heisenberg():
    F = QQ
    one_block = {(0, 1, 2): 1}
    two_blocks = {(0, 1, 2): 1, (3, 4, 5): 1}
    assert len(centroid(F, 3, 3, one_block)) == 1
    assert len(centroid(F, 6, 3, two_blocks)) == 2
    blocks = heisenberg_blocks(F, 6, 3, two_blocks)
    assert blocks is not None and [len(b) for b in blocks] == [3, 3]


def test_heisenberg_generators_on_conjugate():
    rng = random.Random(7)
    for F in (GF(2), GF(5), QQ):
        h = build(heisenberg(3, 2), F)
        P = random_invertible(F, h.d, rng)
        v = graded_view(apply_basis_change(h, P))
        gens = heisenberg_generators(F, v.m, 3, v.forms[0])
        assert gens is not None and len(gens) == 6
        f = v.forms[0]
        a = form_eval(F, f, gens[:3])
        assert a and form_eval(F, f, gens[3:]) == a
        assert form_eval(F, f, [gens[0], gens[1], gens[3]]) == F.zero


def test_combine():
    F = GF(3)
    out = combine(F, [{(0, 1): 1}, {(0, 1): 2, (1, 2): 1}], [1, 1])
    assert out == {(1, 2): 1}

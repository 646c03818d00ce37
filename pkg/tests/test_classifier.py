from __future__ import annotations

import random

import pytest

from nlie import GF, QQ, NLieAlgebra
from nlie.algebra import apply_basis_change, central_extension, quotient_central
from nlie.catalog import Label, build, heisenberg, list_for, parse_label
from nlie.classifier import (
    NormalizationFailure,
    NotClassTwo,
    UnsupportedArity,
    UnsupportedDimension,
    classify,
    classify_quotient_n4,
)
from nlie.invariants import verify_witness
from nlie.linalg import Subspace, identity
from nlie.randgen import random_invertible, random_unimodular


def check(a, r):
    assert verify_witness(a, build(r.label, a.field), r.witness.rows())
    return r.label


def test_catalog_fixed_point():
    a = build(Label("A", (4, 9, 3)), QQ)
    r = classify(a)
    assert r.label == Label("A", (4, 9, 3))
    assert r.witness.rows() == identity(QQ, 9)


def test_conjugate_of_a387_over_gf5():
    F = GF(5)
    a = apply_basis_change(build(Label("A387"), F), random_invertible(F, 8, random.Random(1)))
    assert check(a, classify(a)) == Label("A387")


def test_heisenberg_branch_two_blocks():
    a = build(heisenberg(4, 2), QQ)
    r = classify(a)
    assert check(a, r) == heisenberg(4, 2)
    assert any(s.get("blocks") == 2 for s in r.trace)


def test_cocycle_on_h31_f3():
    # [e1 e2 e3] = e7 with e4, e5, e6 abelian, extended by e8 on (e1, e3, e4)
    q = NLieAlgebra.from_table(3, 7, QQ, {(1, 2, 3): {7: 1}})
    a = central_extension(q, {(1, 3, 4): 1})
    assert check(a, classify(a)) == Label("A", (3, 8, 1))


def test_precondition_errors():
    with pytest.raises(UnsupportedArity):
        classify(NLieAlgebra.from_table(2, 3, QQ, {(1, 2): {3: 1}}))
    with pytest.raises(UnsupportedDimension):
        classify(NLieAlgebra.from_table(3, 9, QQ, {(1, 2, 3): {9: 1}}))
    with pytest.raises(NotClassTwo):
        classify(build(Label("A", (3, 5, 1)), QQ))


def test_abelian_input():
    r = classify(NLieAlgebra.abelian(3, 6, GF(2)))
    assert str(r.label) == "F(6)"


def test_one_dimensional_derived_non_heisenberg_shape():
    # [e1 e2 e5] = [e3 e4 e5] = e6: dim A^2 = 1 but d - dim Z = 5 is no multiple of 3
    a = NLieAlgebra.from_table(3, 6, QQ, {(1, 2, 5): {6: 1}, (3, 4, 5): {6: 1}})
    with pytest.raises(NormalizationFailure) as info:
        classify(a)
    assert info.value.trace


@pytest.mark.parametrize(
    "label, expected",
    [("A(3,7,2)", "A(3,7,2)"), ("H(3,2)", "H(3,2)"), ("H(3,1)+F(3)", "H(3,1)+F(3)"), ("A(4,8,3)", "A(4,8,3)")],
)
def test_classify_quotient_n4(label, expected):
    a = build(parse_label(label), QQ)
    assert str(classify_quotient_n4(a)) == expected


def test_classify_quotient_n4_on_conjugate():
    F = GF(3)
    a = apply_basis_change(build(Label("A", (4, 8, 1)), F), random_invertible(F, 8, random.Random(5)))
    assert classify_quotient_n4(a) == Label("A", (4, 8, 1))


def test_quotient_trace_matches_actual_quotient():
    F = GF(5)
    a = apply_basis_change(build(Label("A", (3, 8, 4)), F), random_invertible(F, 8, random.Random(2)))
    r = classify(a)
    step = next(s for s in r.trace if s["case"] == "central line quotient")
    line = tuple(F.parse_scalar(x) for x in step["line"])
    q, _ = quotient_central(a, Subspace.span(F, 8, [line]))
    assert str(classify_quotient_n4(q)) == step["quotient"]


@pytest.mark.parametrize("text", ["A(3,8,2)", "A(3,8,5)", "A(4,9,6)", "A_387"])
def test_scale_invariance(text):
    F = GF(5)
    rng = random.Random(text)
    base = build(parse_label(text), F)
    table = base.table()
    key = rng.choice(sorted(table))
    table[key] = {i: 3 * c for i, c in table[key].items()}
    scaled = NLieAlgebra.from_table(base.n, base.d, F, table)
    a = apply_basis_change(scaled, random_invertible(F, base.d, rng))
    assert check(a, classify(a)) == parse_label(text)


def test_rational_unimodular_conjugates():
    rng = random.Random(11)
    for text in ["A(3,8,6)", "H(3,2)+F(1)"]:
        lab = parse_label(text)
        a = apply_basis_change(build(lab, QQ), random_unimodular(QQ, 8, rng))
        assert check(a, classify(a)) == lab


def test_labels_come_from_the_list():
    F = GF(3)
    rng = random.Random(4)
    allowed = set(list_for(3, 8).labels)
    for lab in list_for(3, 8).labels:
        a = apply_basis_change(build(lab, F), random_invertible(F, 8, rng))
        assert check(a, classify(a)) in allowed

"""Decision procedure for nilpotent class-two n-Lie algebras with n >= 3, d <= n+5.

The input is normalized against catalog candidates with matching
(dim A^2, dim Z): the bracket is read as a space of n-forms on A/Z, a basis
of decomposable forms is located, and generators adapted to their kernels
are chosen.  Every returned witness is verified by transporting the table.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import NLieAlgebra, nilpotency_class, quotient_central
from .catalog import Label, abelian, build, heisenberg, list_for
from .forms import (
    adapted_generators,
    decomposable_basis,
    graded_view,
    heisenberg_generators,
    target_kind,
)
from .invariants import IsoWitness, assemble_witness, signed_perm_search
from .linalg import Subspace


class ClassifierError(Exception):
    pass


class NotClassTwo(ClassifierError):
    pass


class UnsupportedArity(ClassifierError):
    pass


class UnsupportedDimension(ClassifierError):
    pass


class NormalizationFailure(ClassifierError):
    def __init__(self, message: str, trace=None):
        super().__init__(message)
        self.trace = list(trace or [])


@dataclass
class ClassificationResult:
    label: Label
    witness: IsoWitness
    trace: list = dc_field(default_factory=list)


PERM_FALLBACK_BUDGET = 10**5


def _identity_witness(a: NLieAlgebra) -> IsoWitness:
    F = a.field
    return IsoWitness(tuple(tuple(F.one if i == j else F.zero for j in range(a.d)) for i in range(a.d)))


def _check_arity_dim(a: NLieAlgebra):
    if a.n < 3:
        raise UnsupportedArity(f"arity {a.n} is not supported (need n >= 3)")
    if a.d > a.n + 5:
        raise UnsupportedDimension(f"dimension {a.d} exceeds n+5 = {a.n + 5}")


def classify(a: NLieAlgebra) -> ClassificationResult:
    """Catalog label of ``a`` with a verified basis change onto it."""
    _check_arity_dim(a)
    n, d, F = a.n, a.d, a.field
    trace: list = []
    cls = nilpotency_class(a)
    if cls == "abelian":
        trace.append({"case": "abelian"})
        return ClassificationResult(abelian(n, d), _identity_witness(a), trace)
    if cls != 2:
        raise NotClassTwo(f"nilpotency class is {cls}, not two")
    view = graded_view(a)
    k, z = view.k, view.center.dim
    trace.append({"case": "invariants", "dim_derived": k, "dim_center": z})
    if k == 1:
        return _heisenberg_branch(a, view, trace)
    if d == n + 3 and view.derived != view.center:
        raise UnsupportedDimension("d = n+3 with derived algebra different from the center")
    if d <= n + 2:
        raise NormalizationFailure("dim A^2 >= 2 is impossible for class two with d <= n+2", trace)
    cat = list_for(n, d, F)
    cands = []
    for lab in cat.labels:
        t = build(lab, F)
        tv = graded_view(t)
        if (tv.k, tv.center.dim) == (k, z):
            cands.append((lab, t, tv))
    trace.append({"case": "candidates", "labels": [str(c[0]) for c in cands]})
    for lab, t, tv in cands:
        w = _normalize(a, view, t, tv, trace)
        if w is None:
            res = signed_perm_search(a, t, PERM_FALLBACK_BUDGET)
            if res.witness is not None:
                trace.append({"case": "signed permutation", "target": str(lab), "checked": res.checked})
                w = res.witness
        if w is None:
            continue
        result = ClassificationResult(lab, w, trace)
        if d == n + 5:
            _record_quotient(a, result)
        return result
    raise NormalizationFailure(
        f"no catalog entry of dimension {d} with (dim A^2, dim Z) = ({k}, {z}) matches", trace
    )


def _heisenberg_branch(a, view, trace) -> ClassificationResult:
    n, d, F = a.n, a.d, a.field
    z = view.center.dim
    if (d - z) % n:
        raise NormalizationFailure(f"dim A^2 = 1 but d - dim Z = {d - z} is not a multiple of {n}", trace)
    m = (d - z) // n
    label = heisenberg(n, m, d - m * n - 1)
    trace.append({"case": "one-dimensional derived algebra", "blocks": m, "abelian_summand": d - m * n - 1})
    gens = heisenberg_generators(F, view.m, n, view.forms[0])
    if gens is None:
        raise NormalizationFailure(f"bracket form does not split into {m} Heisenberg blocks", trace)
    t = build(label, F)
    w = assemble_witness(a, t, [view.lift(g) for g in gens], a_view=view)
    if w is None:
        raise NormalizationFailure("Heisenberg generators did not transport onto the catalog table", trace)
    return ClassificationResult(label, w, trace)


def _normalize(a, view, t, tv, trace):
    F, n = a.field, a.n
    if view.m != tv.m:
        return None
    kind = target_kind(F, tv.m, n, tv.forms)
    basis = decomposable_basis(F, view.m, n, view.forms, kind)
    step = {"case": "normalize", "target": None, "form_type": kind}
    if basis is None:
        step["result"] = "no decomposable basis of the required shape"
        trace.append(step)
        return None
    gens = adapted_generators(F, view.m, n, basis, tv.forms)
    if gens is None:
        step["result"] = "kernel pattern not realized"
        trace.append(step)
        return None
    w = assemble_witness(a, t, [view.lift(g) for g in gens], tv, view)
    step["result"] = "verified" if w is not None else "transport mismatch"
    trace.append(step)
    return w


def _record_quotient(a: NLieAlgebra, result: ClassificationResult):
    """Quotient by the image of the last target basis vector, a central line in A^2."""
    P = result.witness.P
    line = tuple(P[i][a.d - 1] for i in range(a.d))
    q, _ = quotient_central(a, Subspace.span(a.field, a.d, [line]))
    qlabel = classify_quotient_n4(q)
    result.trace.append(
        {
            "case": "central line quotient",
            "line": [a.field.format_scalar(x) for x in line],
            "quotient": str(qlabel),
        }
    )


def classify_quotient_n4(a: NLieAlgebra) -> Label:
    """Label of a class-two algebra of dimension n+4, n >= 3."""
    _check_arity_dim(a)
    if a.d != a.n + 4:
        raise UnsupportedDimension(f"expected dimension n+4 = {a.n + 4}, got {a.d}")
    if nilpotency_class(a) != 2:
        raise NotClassTwo("quotient is not of class two")
    n = a.n
    pair = (a.derived.dim, a.center.dim)
    table = {
        (1, 4): heisenberg(n, 1, 3),
        (2, 3): Label("A", (n, n + 4, 1)),
        (2, 2): Label("A", (n, n + 4, 2)),
        (3, 3): Label("A", (n, n + 4, 3)),
    }
    if n == 3:
        table[(1, 1)] = heisenberg(3, 2)
    expected = table.get(pair)
    if expected is None:
        raise NormalizationFailure(f"(dim A^2, dim Z) = {pair} matches no entry of the n+4 list")
    res = classify(a)
    if res.label != expected:
        raise NormalizationFailure(f"invariants suggest {expected} but normalization gave {res.label}", res.trace)
    return res.label

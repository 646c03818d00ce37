"""Isomorphism invariants, witness verification and witness search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import NLieAlgebra, _contract, apply_basis_change, nilpotency_class, transported_brackets
from .forms import GradedView, graded_view, rank_of
from .linalg import GF, Field, Singular, Subspace, extend_basis, invert, matmul, transpose


@dataclass(frozen=True)
class Fingerprint:
    n: int
    d: int
    dim_derived: int
    dim_center: int
    dim_derived_center: int
    nilpotency_class: object
    profile: tuple | None = None

    @property
    def coarse(self) -> tuple:
        return (self.n, self.d, self.dim_derived, self.dim_center, self.dim_derived_center, self.nilpotency_class)

    def as_dict(self) -> dict:
        out = {
            "arity": self.n,
            "dim": self.d,
            "dim_derived": self.dim_derived,
            "dim_center": self.dim_center,
            "dim_derived_center": self.dim_derived_center,
            "class": self.nilpotency_class,
        }
        if self.profile is not None:
            out["ad_rank_profile"] = {f: {str(r): c for r, c in prof} for f, prof in self.profile}
        return out


@dataclass(frozen=True)
class IsoWitness:
    """Basis change P with apply_basis_change(source, P) == target."""

    P: tuple

    def rows(self) -> list:
        return [list(r) for r in self.P]


def _ad_rank_form(F: Field, a: NLieAlgebra):
    """Table as a form valued in derived coordinates, restricted to U."""
    view = graded_view(a)
    form = {}
    for j, f in enumerate(view.forms):
        for key, x in f.items():
            form.setdefault(key, [F.zero] * view.k)[j] = x
    return view, form


def ad_rank(F: Field, form: dict, u) -> int:
    rows = list(_contract(F, form, u).values())
    return rank_of(F, rows)


def projective_profile(a: NLieAlgebra, max_points: int = 200_000) -> tuple | None:
    """Multiset of ad-ranks over all projective points of a finite-field algebra.

    The rank of v only depends on v modulo the center, so the count is done
    on U = A/Z and each point of U stands for q^z points of A.
    """
    F = a.field
    if not F.is_finite:
        raise ValueError("projective profile needs a finite field")
    q, d = F.p, a.d
    if (q**d - 1) // (q - 1) > max_points:
        return None
    view, form = _ad_rank_form(F, a)
    m, z = view.m, a.d - view.m
    counts: dict = {}
    if z:
        counts[0] = (q**z - 1) // (q - 1)
    for u in _projective_points(F, m):
        r = ad_rank(F, form, u) if form else 0
        counts[r] = counts.get(r, 0) + q**z
    return tuple(sorted(counts.items()))


def _projective_points(F: Field, m: int):
    """Vectors whose first nonzero entry is one."""
    els = list(F.elements())
    for lead in range(m):
        for tail in itertools.product(els, repeat=m - lead - 1):
            yield (F.zero,) * lead + (F.one,) + tail


def _reduce_integral(a: NLieAlgebra, p: int) -> NLieAlgebra | None:
    table = {}
    for key, vec in a.brackets.items():
        if any(Fraction(x).denominator != 1 for x in vec):
            return None
        table[key] = [int(x) % p for x in vec]
    return NLieAlgebra(a.n, a.d, GF(p), table)


def fingerprint(a: NLieAlgebra, profile: bool = True, max_points: int = 200_000) -> Fingerprint:
    der, cen = a.derived, a.center
    cls = nilpotency_class(a)
    prof = None
    if profile:
        if a.field.is_finite:
            p = projective_profile(a, max_points)
            prof = None if p is None else ((str(a.field), p),)
        else:
            parts = []
            for p in (2, 3):
                red = _reduce_integral(a, p)
                if red is None:
                    break
                pp = projective_profile(red, max_points)
                if pp is None:
                    break
                parts.append((str(red.field), pp))
            else:
                prof = tuple(parts)
    return Fingerprint(a.n, a.d, der.dim, cen.dim, (der & cen).dim, cls, prof)


# -- witnesses ---------------------------------------------------------------


def witness_mismatch(a: NLieAlgebra, b: NLieAlgebra, P) -> tuple | None:
    """First 1-based tuple where the transported table of ``a`` differs from ``b``."""
    if a.d != b.d or a.n != b.n:
        raise ValueError("dimension mismatch")
    c = apply_basis_change(a, [list(r) for r in P])
    keys = sorted(set(c.brackets) | set(b.brackets))
    for key in keys:
        if c.brackets.get(key) != b.brackets.get(key):
            return tuple(i + 1 for i in key)
    return None


def verify_witness(a: NLieAlgebra, b: NLieAlgebra, P) -> bool:
    """True iff apply_basis_change(a, P) equals b.  Raises Singular for singular P."""
    return witness_mismatch(a, b, P) is None


def _adapted_columns(view: GradedView, u_vectors):
    """Columns [u-vectors, derived basis from their brackets, central complement].

    The derived basis is taken from brackets of generator tuples in
    increasing order, so the same tuple choice can be replayed elsewhere.
    """
    a = view.alg
    F = a.field
    raw = _tuple_brackets(a, u_vectors)
    tuples, vals = [], []
    cur = Subspace.zero(F, a.d)
    for key in sorted(raw):
        v = raw[key]
        if not cur.contains(v):
            tuples.append(key)
            vals.append(v)
            cur = Subspace.span(F, a.d, cur.basis + (v,))
    return tuples, vals


def _tuple_brackets(a: NLieAlgebra, vectors) -> dict:
    return transported_brackets(a, vectors)


def assemble_witness(a: NLieAlgebra, b: NLieAlgebra, images, b_view: GradedView | None = None,
                     a_view: GradedView | None = None) -> IsoWitness | None:
    """Complete images of b's U-representatives in ``a`` to a verified witness.

    ``images`` lists vectors of ``a`` (full coordinates), one per entry of
    b's U index.  The derived part is forced by brackets, the rest of the
    center is matched by complements.
    """
    F = a.field
    bv = b_view or graded_view(b)
    av = a_view or graded_view(a)
    if len(images) != bv.m or a.d != b.d:
        return None
    b_u = [b.unit(i) for i in bv.u_index]
    tuples, b_der = _adapted_columns(bv, b_u)
    raw_a = _tuple_brackets(a, images)
    a_der = [raw_a.get(t, tuple([F.zero] * a.d)) for t in tuples]
    zc = bv.center.dim - len(b_der)
    if av.center.dim - av.derived.dim != zc:
        return None
    try:
        b_z = extend_basis(Subspace.span(F, b.d, b_der), bv.center.basis, zc) if zc else []
        a_z = extend_basis(av.derived, av.center.basis, zc) if zc else []
    except ValueError:
        return None
    Qb = transpose(list(b_u) + list(b_der) + list(b_z))
    Qa = transpose(list(images) + list(a_der) + list(a_z))
    try:
        P = matmul(F, Qa, invert(F, Qb))
        invert(F, P)
    except Singular:
        return None
    if not verify_witness(a, b, P):
        return None
    return IsoWitness(tuple(tuple(r) for r in P))


# -- signed permutation search ------------------------------------------------


@dataclass
class SearchResult:
    status: str  # "found", "none" or "exhausted"
    witness: IsoWitness | None = None
    checked: int = 0

    @property
    def isomorphic(self):
        if self.status == "found":
            return True
        return "unknown" if self.status == "exhausted" else False


def _degree_signature(a: NLieAlgebra):
    args = [0] * a.d
    vals = [0] * a.d
    for key, vec in a.brackets.items():
        for i in key:
            args[i] += 1
        for i, x in enumerate(vec):
            if x:
                vals[i] += 1
    return list(zip(args, vals))


def _scalar_set(F: Field) -> list:
    if F.is_finite and F.p <= 7:
        return list(range(1, F.p))
    return [F.one, F.neg(F.one)]


class _Budget(Exception):
    pass


def signed_perm_iso(a: NLieAlgebra, b: NLieAlgebra, budget: int = 10**5) -> IsoWitness | None:
    """Search basis changes e'_i = s_i e_pi(i) carrying ``a`` onto ``b``."""
    return signed_perm_search(a, b, budget).witness


def signed_perm_search(a: NLieAlgebra, b: NLieAlgebra, budget: int = 10**5) -> SearchResult:
    if (a.n, a.d, a.field) != (b.n, b.d, b.field):
        raise ValueError("algebras must share arity, dimension and field")
    F = a.field
    d, n = a.d, a.n
    sa, sb = _degree_signature(a), _degree_signature(b)
    if sorted(sa) != sorted(sb) or len(a.brackets) != len(b.brackets):
        return SearchResult("none")
    A, B = a.brackets, b.brackets
    pi = [None] * d
    used = [False] * d
    counter = [0]
    scalars = _scalar_set(F)

    def tick():
        counter[0] += 1
        if counter[0] > budget:
            raise _Budget

    def consistent(i):
        assigned = range(i + 1)
        for rest in itertools.combinations(range(i), n - 1):
            I = rest + (i,)
            J = tuple(sorted(pi[t] for t in I))
            if (I in B) != (J in A):
                return False
            if I in B:
                bv, av = B[I], A[J]
                for j in assigned:
                    if bool(bv[j]) != bool(av[pi[j]]):
                        return False
        for I, bv in B.items():
            if I[-1] < i:
                av = A[tuple(sorted(pi[t] for t in I))]
                if bool(bv[i]) != bool(av[pi[i]]):
                    return False
        return True

    def solve_scalars():
        s = [None] * d
        eqs = []
        for I, bv in B.items():
            J = [pi[t] for t in I]
            sign = _parity(J)
            av = A[tuple(sorted(J))]
            for j in range(d):
                if bv[j]:
                    eqs.append((I, j, F.neg(av[pi[j]]) if sign else av[pi[j]], bv[j]))
        # each equation: prod_{t in I} s_t * alpha = beta * s_j
        watch = [[] for _ in range(d)]
        for e in eqs:
            watch[max(e[0] + (e[1],))].append(e)

        def rec(i):
            if i == d:
                return True
            for c in scalars:
                tick()
                s[i] = c
                ok = True
                for I, j, alpha, beta in watch[i]:
                    lhs = alpha
                    for t in I:
                        lhs = F.mul(lhs, s[t])
                    if lhs != F.mul(beta, s[j]):
                        ok = False
                        break
                if ok and rec(i + 1):
                    return True
            s[i] = None
            return False

        return list(s) if rec(0) else None

    def rec(i):
        if i == d:
            s = solve_scalars()
            if s is None:
                return None
            P = [[F.zero] * d for _ in range(d)]
            for col in range(d):
                P[pi[col]][col] = s[col]
            return P
        for t in range(d):
            if used[t] or sa[t] != sb[i]:
                continue
            tick()
            pi[i], used[t] = t, True
            if consistent(i):
                P = rec(i + 1)
                if P is not None:
                    return P
            pi[i], used[t] = None, False
        return None

    try:
        P = rec(0)
    except _Budget:
        return SearchResult("exhausted", None, counter[0])
    if P is None:
        return SearchResult("none", None, counter[0])
    if not verify_witness(a, b, P):
        raise AssertionError("signed permutation search produced a non-witness")
    return SearchResult("found", IsoWitness(tuple(tuple(r) for r in P)), counter[0])


def _parity(seq) -> int:
    inv = 0
    for x in range(len(seq)):
        for y in range(x + 1, len(seq)):
            if seq[x] > seq[y]:
                inv += 1
    return inv % 2


# -- graded search over finite fields -----------------------------------------


def graded_iso_search(a: NLieAlgebra, b: NLieAlgebra, budget: int = 10**6) -> SearchResult:
    """Search isomorphisms a -> b respecting the class-two grading.

    Images of b's generators are enumerated in a's generator coordinates,
    pruned by ad-rank and by consistency of bracket relations; derived and
    central parts are then forced.  Only meaningful over finite fields.
    """
    if (a.n, a.d, a.field) != (b.n, b.d, b.field):
        raise ValueError("algebras must share arity, dimension and field")
    F = a.field
    if not F.is_finite:
        raise ValueError("graded search needs a finite field")
    if a == b:
        ident = tuple(tuple(F.one if i == j else F.zero for j in range(a.d)) for i in range(a.d))
        return SearchResult("found", IsoWitness(ident), 1)
    if fingerprint(a, profile=False) != fingerprint(b, profile=False):
        return SearchResult("none")
    if nilpotency_class(a) != 2:
        raise ValueError("graded search needs class-two algebras")
    av, aform = _ad_rank_form(F, a)
    bv, bform = _ad_rank_form(F, b)
    m, n = bv.m, a.n
    b_ranks = [ad_rank(F, bform, tuple(F.one if t == i else F.zero for t in range(m))) for i in range(m)]
    pool: dict = {}
    for v in itertools.product(list(F.elements()), repeat=m):
        if any(v):
            pool.setdefault(ad_rank(F, aform, v), []).append(v)
    counter = [0]
    chosen: list = []

    def bvals(J):
        return list(bform.get(J, [F.zero] * bv.k))

    def avals(vs):
        cur = aform
        for v in vs:
            cur = _contract(F, cur, v)
            if not cur:
                return [F.zero] * av.k
        return list(cur[()])

    def rec(i, rows_b, rows_a, span):
        if i == m:
            counter[0] += 1
            w = assemble_witness(a, b, [av.lift(v) for v in chosen], bv, av)
            return w
        for v in pool.get(b_ranks[i], []):
            counter[0] += 1
            if counter[0] > budget:
                raise _Budget
            if span.contains(v):
                continue
            new_b, new_a = list(rows_b), list(rows_a)
            for rest in itertools.combinations(range(i), n - 1):
                new_b.append(bvals(rest + (i,)))
                new_a.append(avals([chosen[t] for t in rest] + [v]))
            if new_b:
                rb, ra = rank_of(F, new_b), rank_of(F, new_a)
                if rb != ra or rank_of(F, [x + y for x, y in zip(new_b, new_a)]) != rb:
                    continue
            chosen.append(v)
            w = rec(i + 1, new_b, new_a, Subspace.span(F, m, span.basis + (v,)))
            chosen.pop()
            if w is not None:
                return w
        return None

    try:
        w = rec(0, [], [], Subspace.zero(F, m))
    except _Budget:
        return SearchResult("exhausted", None, counter[0])
    if w is None:
        return SearchResult("none", None, counter[0])
    return SearchResult("found", w, counter[0])

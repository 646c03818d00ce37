"""Class-two algebras seen as families of alternating forms.

For a class-two algebra A with center Z, the bracket factors through
U = A/Z and lands in A^2, so it is a k-dimensional space of alternating
n-forms on U (k = dim A^2).  Normal forms are found by choosing generators
of U adapted to the kernels of decomposable forms in that space.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .algebra import NLieAlgebra, _contract, transported_brackets
from .linalg import Field, Subspace, extend_basis, identity, matmul, nullspace, row_reduce


@dataclass
class GradedView:
    alg: NLieAlgebra
    center: Subspace
    derived: Subspace
    u_index: list
    forms: list

    @property
    def m(self) -> int:
        return len(self.u_index)

    @property
    def k(self) -> int:
        return self.derived.dim

    def lift(self, coords) -> tuple:
        """Vector of A with the given coordinates on the U representatives."""
        F = self.alg.field
        v = [F.zero] * self.alg.d
        for c, i in zip(coords, self.u_index):
            v[i] = c
        return tuple(v)


def graded_view(a: NLieAlgebra) -> GradedView:
    cen, der = a.center, a.derived
    u_index = cen.complement_indices()
    cols = [a.unit(i) for i in u_index]
    raw = transported_brackets(a, cols)
    forms = [{} for _ in der.pivots]
    for key, vec in raw.items():
        for j, pc in enumerate(der.pivots):
            if vec[pc]:
                forms[j][key] = vec[pc]
    return GradedView(a, cen, der, u_index, forms)


# -- basic form operations ---------------------------------------------------


def combine(F: Field, forms, coeffs) -> dict:
    out: dict = {}
    for c, f in zip(coeffs, forms):
        if not c:
            continue
        for key, x in f.items():
            out[key] = F.add(out.get(key, F.zero), F.mul(c, x))
    return {key: x for key, x in out.items() if x}


def form_eval(F: Field, form: dict, vectors) -> object:
    cur = {key: [x] for key, x in form.items()}
    for v in vectors:
        cur = _contract(F, cur, v)
        if not cur:
            return F.zero
    return cur[()][0]


def _iota_matrix(F: Field, m: int, n: int, forms) -> list:
    """Rows express v -> (iota_v f)(e_R) for each form f and (n-1)-subset R."""
    rows = []
    for f in forms:
        for R in combinations(range(m), n - 1):
            row = [F.zero] * m
            for l in range(m):
                if l in R:
                    continue
                S = tuple(sorted(R + (l,)))
                x = f.get(S)
                if x:
                    row[l] = x if S.index(l) % 2 == 0 else F.neg(x)
            if any(row):
                rows.append(row)
    return rows


def form_kernel(F: Field, m: int, n: int, forms) -> Subspace:
    """Common kernel {v : iota_v f = 0 for every f}."""
    return nullspace(F, _iota_matrix(F, m, n, forms), m)


def is_decomposable(F: Field, m: int, n: int, form: dict) -> bool:
    return bool(form) and form_kernel(F, m, n, [form]).dim == m - n


def _plucker_term(F: Field, n: int, f: dict, g: dict, I: tuple, J: tuple):
    """Coefficient of e^J in (iota_I f) ^ g, with I an (n-1)-set and J an (n+1)-set."""
    total = F.zero
    for t, j in enumerate(J):
        if j in I:
            continue
        S = tuple(sorted(I + (j,)))
        x = f.get(S)
        if not x:
            continue
        y = g.get(J[:t] + J[t + 1 :])
        if not y:
            continue
        s = S.index(j) + t
        term = F.mul(x, y)
        total = F.sub(total, term) if s % 2 else F.add(total, term)
    return total


def plucker_quadric(F: Field, m: int, n: int, forms) -> dict | None:
    """First nonzero Plucker quadric restricted to the span of ``forms``.

    Returns coefficients {(a, b): c} with a <= b for the monomial x_a x_b,
    or None when every Plucker relation vanishes on the span, which means
    every form in it is decomposable.
    """
    k = len(forms)
    for I in combinations(range(m), n - 1):
        for J in combinations(range(m), n + 1):
            q = {}
            for a in range(k):
                for b in range(k):
                    x = _plucker_term(F, n, forms[a], forms[b], I, J)
                    if x:
                        key = (min(a, b), max(a, b))
                        q[key] = F.add(q.get(key, F.zero), x)
            q = {key: x for key, x in q.items() if x}
            if q:
                return q
    return None


def binary_roots(F: Field, a, b, c) -> list | None:
    """Projective roots (x, y) of a x^2 + b xy + c y^2, or None if it vanishes."""
    if not (a or b or c):
        return None
    roots = []
    if not a:
        roots.append((F.one, F.zero))
        if b:
            roots.append((F.neg(c), b))
        return _dedupe(F, roots)
    if F.characteristic == 2:
        if F.is_finite and F.p <= 1 << 16:
            for x in F.elements():
                if not F.add(F.add(F.mul(a, F.mul(x, x)), F.mul(b, x)), c):
                    roots.append((x, F.one))
        return roots
    disc = F.sub(F.mul(b, b), F.mul(F(4), F.mul(a, c)))
    s = F.sqrt(disc)
    if s is None:
        return []
    two_a = F.mul(F(2), a)
    for r in (F.add(F.neg(b), s), F.sub(F.neg(b), s)):
        roots.append((F.div(r, two_a), F.one))
    return _dedupe(F, roots)


def _dedupe(F: Field, pts):
    out = []
    for p in pts:
        if not any(_proj_equal(F, p, q) for q in out):
            out.append(p)
    return out


def _proj_equal(F: Field, p, q) -> bool:
    return not F.sub(F.mul(p[0], q[1]), F.mul(p[1], q[0]))


def _quad_value(F: Field, q: dict, x) -> object:
    total = F.zero
    for (a, b), c in q.items():
        total = F.add(total, F.mul(c, F.mul(x[a], x[b])))
    return total


# -- decomposable bases ------------------------------------------------------


def decomposable_basis(F: Field, m: int, n: int, forms, kind: str):
    """A basis of decomposable forms of the span, shaped for ``kind``.

    kind ``all`` expects every form to be decomposable, ``pencil`` a
    two-dimensional span with exactly two decomposable lines, ``net`` a
    three-dimensional span whose decomposable locus is a pair of lines.
    """
    k = len(forms)
    q = plucker_quadric(F, m, n, forms)
    if kind == "all":
        return list(forms) if q is None else None
    if q is None:
        return None
    if kind == "pencil" and k == 2:
        roots = binary_roots(F, q.get((0, 0), F.zero), q.get((0, 1), F.zero), q.get((1, 1), F.zero))
        if not roots or len(roots) != 2:
            return None
        out = [combine(F, forms, r) for r in roots]
    elif kind == "net" and k == 3:
        out = _net_basis(F, q, forms)
        if out is None:
            return None
    else:
        return None
    if all(is_decomposable(F, m, n, f) for f in out):
        return out
    return None


def _net_basis(F: Field, q: dict, forms):
    grad = [[F.zero] * 3 for _ in range(3)]
    for (a, b), c in q.items():
        if a == b:
            grad[a][a] = F.add(grad[a][a], F.mul(F(2), c))
        else:
            grad[a][b] = F.add(grad[a][b], c)
            grad[b][a] = F.add(grad[b][a], c)
    sing = nullspace(F, grad, 3)
    if sing.dim != 1:
        return None
    s = sing.basis[0]
    if _quad_value(F, q, s):
        return None
    for a, b in combinations(range(3), 2):
        ea = tuple(F.one if i == a else F.zero for i in range(3))
        eb = tuple(F.one if i == b else F.zero for i in range(3))
        if Subspace.span(F, 3, [s, ea, eb]).dim != 3:
            continue
        qa = q.get((a, a), F.zero)
        qb = q.get((b, b), F.zero)
        qab = q.get((a, b), F.zero)
        roots = binary_roots(F, qa, qab, qb)
        if roots is None or len(roots) != 2:
            continue
        pts = [tuple(F.add(F.mul(x, ea[i]), F.mul(y, eb[i])) for i in range(3)) for x, y in roots]
        return [combine(F, forms, pts[0]), combine(F, forms, s), combine(F, forms, pts[1])]
    return None


def target_kind(F: Field, m: int, n: int, forms) -> str:
    if len(forms) == 1:
        return "single"
    if plucker_quadric(F, m, n, forms) is None:
        return "all"
    return {2: "pencil", 3: "net"}.get(len(forms), "other")


# -- generator selection -----------------------------------------------------


def _monomial_support(forms):
    out = []
    for f in forms:
        if len(f) != 1:
            raise ValueError("target forms must be monomials")
        out.append(next(iter(f)))
    return out


def adapted_generators(F: Field, m: int, n: int, src_forms, tgt_forms):
    """Images of the target generators realizing the target kernel pattern.

    ``tgt_forms`` must be monomials e^{S_c}.  Returns a list of m vectors
    in source coordinates, or None if no assignment of source forms to
    target forms admits one.
    """
    supports = _monomial_support(tgt_forms)
    k = len(supports)
    kernels = [form_kernel(F, m, n, [f]) for f in src_forms]
    groups: dict = {}
    for i in range(m):
        sig = frozenset(c for c in range(k) if i not in supports[c])
        groups.setdefault(sig, []).append(i)
    order = sorted(groups, key=lambda s: (-len(s), sorted(s)))
    for perm in permutations(range(k)):
        K = [kernels[perm[c]] for c in range(k)]
        images = _greedy(F, m, K, groups, order)
        if images is not None:
            return images
    return None


def _greedy(F: Field, m: int, K, groups, order):
    k = len(K)
    images: list = [None] * m
    chosen = Subspace.zero(F, m)
    for sig in order:
        idx = groups[sig]
        if sig:
            S = Subspace.full(F, m)
            for c in sig:
                S = S & K[c]
            avoid = chosen
            for c in range(k):
                if c not in sig:
                    avoid = avoid + (S & K[c])
            cands = S.basis
        else:
            avoid = chosen
            for c in range(k):
                avoid = avoid + K[c]
            cands = identity(F, m)
        try:
            picked = extend_basis(avoid, cands, len(idx))
        except ValueError:
            return None
        for i, v in zip(idx, picked):
            images[i] = tuple(v)
        chosen = Subspace.span(F, m, chosen.basis + tuple(picked))
    return images


# -- one-dimensional derived algebra -----------------------------------------


def centroid(F: Field, m: int, n: int, form: dict) -> list:
    """Basis of {X : f(Xu, v, ...) = f(u, Xv, ...) and f(Xu, u, ...) = 0}.

    Matrices are flattened row-major; X acts on column vectors.
    """
    rows = []
    for R in combinations(range(m), n - 2):
        for i in range(m):
            for j in range(i, m):
                row = [F.zero] * (m * m)
                for l in range(m):
                    x = _signed(F, form, (l, j) + R)
                    if x:
                        row[l * m + i] = F.add(row[l * m + i], x)
                    if i != j:
                        y = _signed(F, form, (i, l) + R)
                        if y:
                            row[l * m + j] = F.sub(row[l * m + j], y)
                if any(row):
                    rows.append(row)
    return list(nullspace(F, rows, m * m).basis)


def _signed(F: Field, form: dict, idx: tuple):
    if len(set(idx)) < len(idx):
        return F.zero
    order = sorted(range(len(idx)), key=lambda t: idx[t])
    key = tuple(idx[t] for t in order)
    x = form.get(key)
    if not x:
        return F.zero
    inv = sum(1 for a in range(len(order)) for b in range(a + 1, len(order)) if order[a] > order[b])
    return F.neg(x) if inv % 2 else x


def heisenberg_blocks(F: Field, m: int, n: int, form: dict):
    """Split U into blocks carrying one decomposable summand each.

    Handles one or two blocks.  Returns a list of bases, or None when the
    form does not split that way over F.
    """
    if m == n:
        return [[tuple(F.one if i == j else F.zero for i in range(m)) for j in range(m)]]
    if m != 2 * n:
        return None
    E = centroid(F, m, n, form)
    if len(E) != 2:
        return None
    one = [F.one if i // m == i % m else F.zero for i in range(m * m)]
    X = None
    for v in E:
        if Subspace.span(F, m * m, [one, v]).dim == 2:
            X = [list(v[r * m : (r + 1) * m]) for r in range(m)]
            break
    X2 = matmul(F, X, X)
    flat = [x for r in X2 for x in r]
    flatX = [x for r in X for x in r]
    # X^2 = s X + t I
    sol = nullspace(F, [[flatX[i], one[i], F.neg(flat[i])] for i in range(m * m)], 3)
    vec = next((v for v in sol.basis if v[2]), None)
    if vec is None:
        return None
    s, t = F.div(vec[0], vec[2]), F.div(vec[1], vec[2])
    roots = binary_roots(F, F.one, F.neg(s), F.neg(t))
    if not roots or len(roots) != 2:
        return None
    blocks = []
    for lam, _ in roots:
        shifted = [[F.sub(X[r][c], lam) if r == c else X[r][c] for c in range(m)] for r in range(m)]
        V = nullspace(F, shifted, m)
        if V.dim != n:
            return None
        blocks.append(list(V.basis))
    return blocks


def heisenberg_generators(F: Field, m: int, n: int, form: dict):
    """Generators g_1..g_m with f(block_1) = f(block_2) and mixed values zero."""
    blocks = heisenberg_blocks(F, m, n, form)
    if blocks is None:
        return None
    vals = [form_eval(F, form, b) for b in blocks]
    if not all(vals):
        return None
    if len(blocks) == 2:
        c = F.div(vals[0], vals[1])
        blocks[1][0] = tuple(F.mul(c, x) for x in blocks[1][0])
    return [v for b in blocks for v in b]


def rank_of(F: Field, rows) -> int:
    return len(row_reduce(F, rows)[0]) if rows else 0

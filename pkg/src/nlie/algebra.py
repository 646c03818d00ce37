"""n-Lie algebras given by structure constants, and the structure theory
built on them: Filippov identity, derived and central series, quotients,
direct sums, central extensions and basis changes.

Indices are 1-based at the public surface (``from_table``, ``table``) and
0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .linalg import Field, FieldMismatch, Matrix, Subspace, _dot, invert, matvec, nullspace


class NotCentral(ValueError):
    pass


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 when an entry repeats)."""
    s = list(seq)
    sign = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            if s[i] == s[j]:
                return 0
            if s[i] > s[j]:
                sign = -sign
    return sign


class NLieAlgebra:
    """Alternating n-ary bracket on F^d given on strictly increasing basis tuples.

    Keys of ``brackets`` are sorted 0-based index tuples, values are dense
    coefficient tuples of length ``d``.  Zero brackets are dropped.  Instances
    are treated as immutable.
    """

    def __init__(self, n: int, d: int, field: Field, brackets: Mapping[tuple, Sequence], labels=None):
        if n < 2:
            raise ValueError("arity must be at least 2")
        if d < 0:
            raise ValueError("dimension must be non-negative")
        table = {}
        for key, val in brackets.items():
            key = tuple(key)
            if len(key) != n or any(not 0 <= i < d for i in key):
                raise ValueError(f"bad bracket key {key} for arity {n}, dim {d}")
            if any(key[i] >= key[i + 1] for i in range(n - 1)):
                raise ValueError(f"bracket key {key} is not strictly increasing")
            val = tuple(field(x) for x in val)
            if len(val) != d:
                raise ValueError(f"bracket value of length {len(val)} in dimension {d}")
            if any(val):
                table[key] = val
        self.n = n
        self.d = d
        self.field = field
        self._table = table
        self.labels = tuple(labels) if labels else None

    # -- construction helpers ---------------------------------------------

    @classmethod
    def from_table(cls, n: int, d: int, field: Field, table: Mapping[tuple, Mapping[int, object]]):
        """Build from 1-based keys and sparse 1-based values ``{(1,2,3): {7: 1}}``."""
        brackets = {}
        for key, val in table.items():
            key = tuple(k - 1 for k in key)
            if list(key) != sorted(set(key)):
                raise ValueError(f"bracket key {tuple(k + 1 for k in key)} is not strictly increasing")
            vec = [field.zero] * d
            for idx, c in val.items():
                if not 1 <= idx <= d:
                    raise ValueError(f"coordinate {idx} out of range 1..{d}")
                vec[idx - 1] = field(c)
            brackets[key] = vec
        return cls(n, d, field, brackets)

    @classmethod
    def abelian(cls, n: int, d: int, field: Field):
        return cls(n, d, field, {})

    # -- views ---------------------------------------------------------------

    @property
    def brackets(self) -> dict:
        return dict(self._table)

    def table(self) -> dict:
        """1-based sparse table ``{(i1..in): {k: c}}``."""
        out = {}
        for key, val in sorted(self._table.items()):
            out[tuple(i + 1 for i in key)] = {k + 1: c for k, c in enumerate(val) if c}
        return out

    @cached_property
    def sparse(self) -> dict:
        return {key: {k: c for k, c in enumerate(val) if c} for key, val in self._table.items()}

    def __eq__(self, other):
        if not isinstance(other, NLieAlgebra):
            return NotImplemented
        return (self.n, self.d, self.field, self._table) == (other.n, other.d, other.field, other._table)

    def __hash__(self):
        return hash((self.n, self.d, self.field, frozenset(self._table.items())))

    def __repr__(self):
        parts = []
        for key, val in self.table().items():
            rhs = " + ".join(
                (f"e{k}" if c == self.field.one else f"{self.field.format_scalar(c)}*e{k}") for k, c in val.items()
            )
            parts.append(f"[{','.join(f'e{i}' for i in key)}]={rhs}")
        return f"NLieAlgebra(n={self.n}, d={self.d}, {self.field}: {'; '.join(parts) or 'abelian'})"

    @property
    def is_abelian(self) -> bool:
        return not self._table

    # -- brackets --------------------------------------------------------

    def basis_bracket(self, idx: Sequence[int]):
        """Signed lookup of the bracket of basis vectors (0-based, any order)."""
        s = perm_sign(idx)
        if s == 0:
            return None
        val = self._table.get(tuple(sorted(idx)))
        if val is None:
            return None
        if s > 0:
            return val
        F = self.field
        return tuple(F.neg(x) for x in val)

    def bracket(self, *vectors: Sequence) -> tuple:
        """Multilinear extension of the table to arbitrary vectors."""
        if len(vectors) != self.n:
            raise ValueError(f"bracket takes {self.n} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.d:
                raise FieldMismatch(f"vector of length {len(v)} in dimension {self.d}")
        F = self.field
        vecs = [tuple(F(x) for x in v) for v in vectors]
        out = [F.zero] * self.d
        for key, val in self._table.items():
            minor = _det_columns(F, vecs, key)
            if minor:
                for k, c in enumerate(val):
                    if c:
                        out[k] = F.add(out[k], F.mul(minor, c))
        return tuple(out)

    def ad_rows(self, v: Sequence) -> list[tuple]:
        """The vectors [v, e_R] over increasing (n-1)-tuples R."""
        F = self.field
        rows = []
        support = [(i, c) for i, c in enumerate(v) if c]
        for R in combinations(range(self.d), self.n - 1):
            acc = None
            for i, c in support:
                b = self.basis_bracket((i,) + R)
                if b is None:
                    continue
                if acc is None:
                    acc = [F.zero] * self.d
                for k, x in enumerate(b):
                    if x:
                        acc[k] = F.add(acc[k], F.mul(c, x))
            if acc is not None and any(acc):
                rows.append(tuple(acc))
        return rows

    def unit(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if j == i else F.zero for j in range(self.d))

    # -- structure ---------------------------------------------------------

    @cached_property
    def derived(self) -> Subspace:
        return Subspace.span(self.field, self.d, self._table.values())

    @cached_property
    def center(self) -> Subspace:
        return _upper_step(self, Subspace.zero(self.field, self.d))

    def is_class_two(self) -> bool:
        return bool(self._table) and self.center.includes(self.derived)


def _det_columns(F: Field, vecs, cols) -> object:
    """det of the square matrix vecs[i][cols[j]]."""
    m = [[v[c] for c in cols] for v in vecs]
    n = len(m)
    if n == 2:
        return F.sub(F.mul(m[0][0], m[1][1]), F.mul(m[0][1], m[1][0]))
    from .linalg import det

    return det(F, m)


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def check_alternating(a: NLieAlgebra) -> bool:
    """The stored table is alternating: increasing keys, full-length values."""
    for key, val in a._table.items():
        if len(key) != a.n or any(key[i] >= key[i + 1] for i in range(a.n - 1)):
            return False
        if len(val) != a.d or any(not 0 <= k < a.d for k in key):
            return False
    return True


@dataclass(frozen=True)
class FilippovResult:
    ok: bool
    x: tuple | None = None
    y: tuple | None = None
    lhs: tuple | None = None
    rhs: tuple | None = None

    def __bool__(self):
        return self.ok


def _sparse_lookup(a: NLieAlgebra, idx):
    s = perm_sign(idx)
    if s == 0:
        return None
    val = a.sparse.get(tuple(sorted(idx)))
    if val is None:
        return None
    return val, s


def _bracket_with_vector(a: NLieAlgebra, idx: list, pos: int, vec: dict, out: dict):
    """out += [e_idx with slot ``pos`` replaced by vec]."""
    F = a.field
    for j, c in vec.items():
        idx[pos] = j
        hit = _sparse_lookup(a, idx)
        if hit is None:
            continue
        val, s = hit
        coef = c if s > 0 else F.neg(c)
        for k, x in val.items():
            out[k] = F.add(out.get(k, F.zero), F.mul(coef, x))


def check_filippov(a: NLieAlgebra) -> FilippovResult:
    """Evaluate [[x1..xn],y2..yn] = sum_i [x1,..,[xi,y2..yn],..,xn] on basis tuples.

    x runs over increasing n-tuples and y over increasing (n-1)-tuples; the
    first violation is returned with 1-based indices.
    """
    n, d = a.n, a.d
    F = a.field
    ys = list(combinations(range(d), n - 1))
    active = []
    for y in ys:
        act = {}
        for j in range(d):
            hit = _sparse_lookup(a, (j,) + y)
            if hit is not None:
                val, s = hit
                act[j] = val if s > 0 else {k: F.neg(c) for k, c in val.items()}
        active.append(act)
    for x in combinations(range(d), n):
        inner = a.sparse.get(x)
        xs = set(x)
        for y, act in zip(ys, active):
            if not act or (inner is None and not xs.intersection(act)):
                continue
            lhs: dict = {}
            if inner:
                for k, c in inner.items():
                    vec = act.get(k)
                    if vec:
                        for t, v in vec.items():
                            lhs[t] = F.add(lhs.get(t, F.zero), F.mul(c, v))
            rhs: dict = {}
            for i in range(n):
                vec = act.get(x[i])
                if vec is not None:
                    _bracket_with_vector(a, list(x), i, vec, rhs)
            lv = {k: c for k, c in lhs.items() if c}
            rv = {k: c for k, c in rhs.items() if c}
            if lv != rv:
                dense = lambda m: tuple(m.get(k, F.zero) for k in range(d))  # noqa: E731
                return FilippovResult(
                    False,
                    tuple(i + 1 for i in x),
                    tuple(i + 1 for i in y),
                    dense(lv),
                    dense(rv),
                )
    return FilippovResult(True)


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    derived: tuple  # A = A^1 ⊇ A^2 ⊇ ... (stabilized)
    central: tuple  # 0 = Z_0 ⊆ Z_1 ⊆ ... (stabilized)
    nilpotency_class: object  # "abelian", an int >= 2, or None when not nilpotent

    @property
    def derived_dims(self):
        return [s.dim for s in self.derived]

    @property
    def central_dims(self):
        return [s.dim for s in self.central]


def _upper_step(a: NLieAlgebra, prev: Subspace) -> Subspace:
    """{x : [x, A, ..., A] ⊆ prev}."""
    F = a.field
    funcs = prev.annihilator().basis
    if not funcs:
        return Subspace.full(F, a.d)
    rows: dict = {}
    for S, val in a._table.items():
        pv = [_dot(F, phi, val) for phi in funcs]
        if not any(pv):
            continue
        for t, i in enumerate(S):
            R = S[:t] + S[t + 1 :]
            block = rows.get(R)
            if block is None:
                block = rows[R] = [[F.zero] * a.d for _ in funcs]
            for f, x in enumerate(pv):
                if x:
                    block[f][i] = F.sub(block[f][i], x) if t % 2 else F.add(block[f][i], x)
    mat = [row for block in rows.values() for row in block if any(row)]
    return nullspace(F, mat, a.d)


def derived_step(a: NLieAlgebra, S: Subspace) -> Subspace:
    """[S, A, ..., A]."""
    form = {key: list(val) for key, val in a._table.items()}
    vecs = []
    for w in S.basis:
        vecs.extend(_contract(a.field, form, w).values())
    return Subspace.span(a.field, a.d, vecs)


def derived_series(a: NLieAlgebra) -> SeriesReport:
    return _series(a)


def upper_central_series(a: NLieAlgebra) -> SeriesReport:
    return _series(a)


def _series(a: NLieAlgebra) -> SeriesReport:
    F = a.field
    der = [Subspace.full(F, a.d)]
    if a._table:
        der.append(a.derived)
        while der[-1].dim and der[-1] != der[-2]:
            der.append(derived_step(a, der[-1]))
    cen = [Subspace.zero(F, a.d)]
    while True:
        nxt = _upper_step(a, cen[-1])
        if nxt == cen[-1]:
            break
        cen.append(nxt)
    if not a._table:
        cls = "abelian"
    elif der[-1].dim == 0:
        cls = len(der) - 1
    else:
        cls = None
    return SeriesReport(tuple(der), tuple(cen), cls)


def center(a: NLieAlgebra) -> Subspace:
    return a.center


def nilpotency_class(a: NLieAlgebra):
    """"abelian", the class c >= 2, or None if not nilpotent."""
    if not a._table:
        return "abelian"
    prev, cur = Subspace.full(a.field, a.d), a.derived
    c = 1
    while cur.dim and cur != prev:
        prev, cur = cur, derived_step(a, cur)
        c += 1
    return c if cur.dim == 0 else None


def is_class_two(a: NLieAlgebra) -> bool:
    return a.is_class_two()


# ---------------------------------------------------------------------------
# basis change, quotient, sums, extensions
# ---------------------------------------------------------------------------


def _contract(F: Field, form: dict, g: Sequence) -> dict:
    """Insert ``g`` into the first slot of a vector-valued alternating form."""
    out: dict = {}
    for S, val in form.items():
        for t, l in enumerate(S):
            c = g[l]
            if not c:
                continue
            if t % 2:
                c = F.neg(c)
            R = S[:t] + S[t + 1 :]
            cur = out.get(R)
            if cur is None:
                out[R] = [F.mul(c, x) for x in val]
            else:
                for i, x in enumerate(val):
                    if x:
                        cur[i] = F.add(cur[i], F.mul(c, x))
    return {R: v for R, v in out.items() if any(v)}


def _derived_form(a: NLieAlgebra):
    """The table as a form with values in derived-algebra coordinates."""
    der = a.derived
    form = {key: [val[pc] for pc in der.pivots] for key, val in a._table.items()}
    return der, form


def transported_brackets(a: NLieAlgebra, cols: Sequence[Sequence]) -> dict:
    """Brackets in ``a`` of the given column vectors over increasing index tuples.

    Columns lying in the center contribute zero and are skipped; the rest are
    contracted into the table one slot at a time, sharing prefixes.
    """
    F = a.field
    n = a.n
    if not a._table:
        return {}
    der, form = _derived_form(a)
    cen = a.center
    live = [j for j, c in enumerate(cols) if not cen.contains(c)]
    out = {}

    def rec(start, chosen, cur):
        if len(chosen) == n:
            coords = cur.get(())
            if coords is not None:
                vec = [F.zero] * a.d
                for c, w in zip(coords, der.basis):
                    if c:
                        for k, x in enumerate(w):
                            if x:
                                vec[k] = F.add(vec[k], F.mul(c, x))
                out[tuple(chosen)] = tuple(vec)
            return
        need = n - len(chosen)
        for pos in range(start, len(live) - need + 1):
            j = live[pos]
            nxt = _contract(F, cur, cols[j])
            if nxt:
                rec(pos + 1, chosen + [j], nxt)

    rec(0, [], form)
    return out


def apply_basis_change(a: NLieAlgebra, P: Matrix) -> NLieAlgebra:
    """Table in the basis e'_j = P e_j (columns of P): [e'..]' = P^-1 [P e..]."""
    F = a.field
    if len(P) != a.d or any(len(r) != a.d for r in P):
        raise ValueError("basis change must be a d x d matrix")
    P = [[F(x) for x in row] for row in P]
    Pinv = invert(F, P)
    cols = [tuple(P[i][j] for i in range(a.d)) for j in range(a.d)]
    raw = transported_brackets(a, cols)
    new = {key: matvec(F, Pinv, val) for key, val in raw.items()}
    return NLieAlgebra(a.n, a.d, F, new)


def projection_matrix(I: Subspace) -> tuple[list[int], Matrix]:
    """Complement indices and the coordinate projection F^d -> F^d / I."""
    F = I.field
    comp = I.complement_indices()
    rows = []
    for c in comp:
        row = [F.zero] * I.ambient
        row[c] = F.one
        for b, pc in zip(I.basis, I.pivots):
            # coordinate c of v - sum v[pc] * b
            if b[c]:
                row[pc] = F.sub(row[pc], b[c])
        rows.append(row)
    return comp, rows


def quotient_central(a: NLieAlgebra, I: Subspace):
    """A/I for a central subspace I, on the complement basis of I's pivots.

    Returns ``(quotient, projection)`` where ``projection`` is the
    (d - dim I) x d coordinate map.
    """
    if I.field != a.field or I.ambient != a.d:
        raise FieldMismatch("subspace does not live in the algebra")
    if not a.center.includes(I):
        raise NotCentral("quotient subspace is not central")
    F = a.field
    comp, proj = projection_matrix(I)
    pos = {c: i for i, c in enumerate(comp)}
    new = {}
    for key in combinations(comp, a.n):
        val = a._table.get(key)
        if val is None:
            continue
        new[tuple(pos[k] for k in key)] = matvec(F, proj, val)
    return NLieAlgebra(a.n, len(comp), F, new), proj


def direct_sum(a: NLieAlgebra, b: NLieAlgebra) -> NLieAlgebra:
    if a.n != b.n:
        raise ValueError("direct sum of algebras with different arity")
    if a.field != b.field:
        raise FieldMismatch("direct sum over different fields")
    F = a.field
    d = a.d + b.d
    new = {}
    for key, val in a._table.items():
        new[key] = tuple(val) + (F.zero,) * b.d
    for key, val in b._table.items():
        new[tuple(k + a.d for k in key)] = (F.zero,) * a.d + tuple(val)
    return NLieAlgebra(a.n, d, F, new)


def central_extension(q: NLieAlgebra, cocycle: Mapping[tuple, object]) -> NLieAlgebra:
    """Extend ``q`` by a new last coordinate receiving the cocycle values.

    Cocycle keys are 1-based increasing n-tuples of ``q``'s indices.  The
    result is not checked against the Filippov identity.
    """
    F = q.field
    d = q.d + 1
    new = {key: tuple(val) + (F.zero,) for key, val in q._table.items()}
    for key, c in cocycle.items():
        key0 = tuple(k - 1 for k in key)
        if len(key0) != q.n or list(key0) != sorted(set(key0)) or any(not 0 <= k < q.d for k in key0):
            raise ValueError(f"bad cocycle key {key}")
        c = F(c)
        if not c:
            continue
        base = list(new.get(key0, (F.zero,) * d))
        base[-1] = F.add(base[-1], c)
        new[key0] = tuple(base)
    return NLieAlgebra(q.n, d, F, new)

"""Exact scalar arithmetic and dense linear algebra over Q and GF(p).

Scalars are plain Python values: :class:`fractions.Fraction` for the
rationals and ``int`` residues in ``[0, p)`` for prime fields.  A field
object carries the arithmetic, so matrices are just lists of rows.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
import math
from fractions import Fraction
from typing import Iterable, Sequence

from sympy import isprime
from sympy.ntheory import sqrt_mod

Vector = tuple
Matrix = list


class Singular(ArithmeticError):
    """Raised when a square matrix has no inverse."""


class FieldMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Field:
    """An exact field: ``Field("Q")`` or ``Field("GF", p)``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p != 0:
                raise ValueError("rationals take no modulus")
        elif self.kind == "GF":
            if not (2 <= self.p < 2**31) or not isprime(self.p):
                raise ValueError(f"GF(p) needs a prime 2 <= p < 2^31, got {self.p}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    # -- construction -----------------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"(?:GF|F)\(?\s*(\d+)\s*\)?", text)
        if not m:
            raise ValueError(f"bad field {text!r}; expected 'Q' or 'GF(p)'")
        return cls("GF", int(m.group(1)))

    def __str__(self) -> str:
        return "Q" if self.kind == "Q" else f"GF({self.p})"

    @property
    def is_finite(self) -> bool:
        return self.kind == "GF"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into the field."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in {self}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    # -- arithmetic ---------------------------------------------------------

    def add(self, a, b):
        return a + b if self.kind == "Q" else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.kind == "Q" else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.kind == "Q" else (a * b) % self.p

    def neg(self, a):
        return -a if self.kind == "Q" else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a if self.kind == "Q" else pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        """All field elements; finite fields only."""
        if self.kind != "GF":
            raise ValueError("Q is infinite")
        return range(self.p)

    def sqrt(self, a):
        """A square root of ``a`` in the field, or None."""
        if not a:
            return self.zero
        if self.kind == "Q":
            if a < 0:
                return None
            num, den = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
            if num is None or den is None:
                return None
            return Fraction(num, den)
        if self.p == 2:
            return a
        r = sqrt_mod(a, self.p)
        return None if r is None else r % self.p

    # -- serialization ---------------------------------------------------

    def format_scalar(self, a) -> str:
        if self.kind == "Q":
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a)

    def parse_scalar(self, text: str):
        text = str(text).strip()
        if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", text):
            raise ValueError(f"bad scalar {text!r}")
        if "/" in text:
            num, den = (int(t) for t in text.split("/"))
            if den == 0:
                raise ValueError(f"bad scalar {text!r}: zero denominator")
            return self(Fraction(num, den))
        return self(int(text))


QQ = Field("Q")


def GF(p: int) -> Field:
    return Field("GF", p)


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def identity(F: Field, d: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(d)] for i in range(d)]


def zeros(F: Field, rows: int, cols: int) -> Matrix:
    return [[F.zero] * cols for _ in range(rows)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(F: Field, a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([_dot(F, row, col) for col in bt])
    return out


def matvec(F: Field, m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(_dot(F, row, v) for row in m)


def _dot(F: Field, u, v):
    s = 0
    for x, y in zip(u, v):
        if x and y:
            s += x * y
    return F(s) if F.kind == "GF" else Fraction(s)


def row_reduce(F: Field, m: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Pivots are taken at the first nonzero entry in column order.  Returns
    ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    if not m:
        return [], []
    if F.kind != "GF":
        return _row_reduce_rational(F, m, ncols)
    rows = [list(r) for r in m]
    width = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    p = F.p
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        if lead != 1:
            li = pow(lead, -1, p)
            rows[r] = [x * li % p for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            f = rows[i][c]
            if i != r and f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _primitive(row: list) -> list:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def _row_reduce_rational(F: Field, m: Sequence[Sequence], ncols: int | None):
    """Fraction-free Gauss-Jordan on integer rows; pivots are scaled at the end."""
    rows = []
    for r in m:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        rows.append(_primitive([x.numerator * (den // x.denominator) for x in r]))
    width = len(rows[0]) if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(width):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        a = pr[c]
        for i in range(len(rows)):
            b = rows[i][c]
            if i != r and b:
                g = math.gcd(a, b)
                a1, b1 = a // g, b // g
                rows[i] = _primitive([a1 * x - b1 * y for x, y in zip(rows[i], pr)])
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    out = []
    for row, c in zip(rows[:r], pivots):
        lead = row[c]
        out.append([Fraction(x, lead) for x in row])
    return out, pivots


def rref(F: Field, m: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Reduced row echelon form padded to the input shape, and the rank."""
    if not m:
        return [], 0
    red, piv = row_reduce(F, m)
    width = len(m[0])
    out = red + [[F.zero] * width for _ in range(len(m) - len(red))]
    return out, len(piv)


def rank(F: Field, m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(row_reduce(F, m)[1])


def nullspace(F: Field, m: Sequence[Sequence], ncols: int | None = None) -> "Subspace":
    """Right kernel ``{v : m v = 0}`` as a Subspace of F^ncols."""
    if ncols is None:
        if not m:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(m[0])
    red, piv = row_reduce(F, m, ncols) if m else ([], [])
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for row, pc in zip(red, piv):
            if row[free]:
                v[pc] = F.neg(row[free])
        basis.append(v)
    return Subspace.span(F, ncols, basis)


def invert(F: Field, m: Sequence[Sequence]) -> Matrix:
    d = len(m)
    if any(len(row) != d for row in m):
        raise ValueError("invert needs a square matrix")
    aug = [list(row) + [F.one if i == j else F.zero for j in range(d)] for i, row in enumerate(m)]
    red, piv = row_reduce(F, aug, d)
    if len(piv) < d:
        raise Singular(f"matrix has rank {len(piv)} < {d}")
    return [row[d:] for row in red]


def det(F: Field, m: Sequence[Sequence]):
    """Determinant by elimination."""
    a = [list(r) for r in m]
    d = len(a)
    result = F.one
    for c in range(d):
        piv = next((i for i in range(c, d) if a[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = F.neg(result)
        lead = a[c][c]
        result = F.mul(result, lead)
        li = F.inv(lead)
        for i in range(c + 1, d):
            f = a[i][c]
            if f:
                f = F.mul(f, li)
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[c])]
    return result


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """Subspace of F^ambient stored by its reduced row echelon basis.

    The echelon basis is canonical, so two spans of the same space compare
    equal.
    """

    field: Field
    ambient: int
    basis: tuple[tuple, ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, F: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        vecs = [list(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient}")
        red, piv = row_reduce(F, vecs, ambient) if vecs else ([], [])
        return cls(F, ambient, tuple(tuple(r) for r in red), tuple(piv))

    @classmethod
    def zero(cls, F: Field, ambient: int) -> "Subspace":
        return cls(F, ambient, (), ())

    @classmethod
    def full(cls, F: Field, ambient: int) -> "Subspace":
        return cls.span(F, ambient, identity(F, ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def _check(self, other: "Subspace"):
        if self.field != other.field or self.ambient != other.ambient:
            raise FieldMismatch("subspaces live in different spaces")

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after clearing the pivot coordinates."""
        F = self.field
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = out[pc]
            if f:
                out = [F.sub(x, F.mul(f, y)) for x, y in zip(out, row)]
        return out

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of ``v`` in the echelon basis; ``v`` must lie in the span."""
        coords = tuple(v[pc] for pc in self.pivots)
        if any(self.reduce(v)):
            raise ValueError("vector is not in the subspace")
        return coords

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient:
            raise FieldMismatch("vector length does not match ambient dimension")
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def includes(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    __add__ = sum

    def annihilator(self) -> "Subspace":
        """Linear functionals (as coordinate vectors) vanishing on the subspace."""
        if not self.basis:
            return Subspace.full(self.field, self.ambient)
        return nullspace(self.field, self.basis, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        ann = self.annihilator().sum(other.annihilator())
        return ann.annihilator()

    __and__ = intersect

    def complement_basis(self) -> list[tuple]:
        """Standard basis vectors at the non-pivot columns, extending to F^ambient."""
        F = self.field
        pivs = set(self.pivots)
        out = []
        for j in range(self.ambient):
            if j not in pivs:
                out.append(tuple(F.one if i == j else F.zero for i in range(self.ambient)))
        return out

    def complement_indices(self) -> list[int]:
        pivs = set(self.pivots)
        return [j for j in range(self.ambient) if j not in pivs]


def span(F: Field, ambient: int, vectors) -> Subspace:
    return Subspace.span(F, ambient, vectors)


def contains(S: Subspace, v) -> bool:
    return S.contains(v)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    return S.sum(T)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    return S.intersect(T)


def complement_basis(S: Subspace) -> list[tuple]:
    return S.complement_basis()


def extend_basis(S: Subspace, candidates: Iterable[Sequence], count: int) -> list[tuple]:
    """Pick ``count`` vectors from ``candidates`` independent modulo ``S``."""
    picked = []
    cur = S
    for v in candidates:
        if len(picked) == count:
            break
        if not cur.contains(v):
            picked.append(tuple(v))
            cur = Subspace.span(S.field, S.ambient, cur.basis + (tuple(v),))
    if len(picked) < count:
        raise ValueError("not enough independent candidates")
    return picked

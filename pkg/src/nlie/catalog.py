"""Named algebras with explicit multiplication tables.

Each entry fixes a basis e1..ed; in Heisenberg algebras the center vector
x comes last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from .algebra import NLieAlgebra, direct_sum
from .linalg import Field


class InvalidParameters(ValueError):
    pass


class DisputedEntry(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Label:
    """Catalog identity.

    family is one of ``Abelian`` (params ``(n, d)``), ``H`` ``(n, m)``,
    ``HplusF`` ``(n, m, k)``, ``A`` ``(n, d, k)``, ``A381``, ``A387``,
    ``L7`` ``(i,)`` and ``L5``.
    """

    family: str
    params: tuple = ()
    reading: str | None = dc_field(default=None, compare=True)

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f == "Abelian":
            return f"F({p[1]})"
        if f == "H":
            return f"H({p[0]},{p[1]})"
        if f == "HplusF":
            return f"H({p[0]},{p[1]})+F({p[2]})"
        if f == "A":
            return f"A({p[0]},{p[1]},{p[2]})"
        if f in ("A381", "A387"):
            return f"A_{f[1:]}"
        if f == "L7":
            return f"L7({p[0]})" + (f"[{self.reading}]" if self.reading else "")
        if f == "L5":
            return "L5"
        return f"{f}{p}"

    @property
    def arity(self) -> int:
        if self.family in ("A381", "A387"):
            return 3
        if self.family in ("L7", "L5"):
            return 2
        return self.params[0]

    @property
    def dim(self) -> int:
        f, p = self.family, self.params
        if f == "Abelian":
            return p[1]
        if f == "H":
            return p[0] * p[1] + 1
        if f == "HplusF":
            return p[0] * p[1] + 1 + p[2]
        if f == "A":
            return p[1]
        if f in ("A381", "A387"):
            return 8
        if f == "L7":
            return 7
        return 5


def abelian(n: int, d: int) -> Label:
    return Label("Abelian", (n, d))


def heisenberg(n: int, m: int, k: int = 0) -> Label:
    return Label("H", (n, m)) if k == 0 else Label("HplusF", (n, m, k))


def parse_label(text: str, n: int | None = None) -> Label:
    """Parse the string forms produced by ``str(Label)`` (plus a few aliases)."""
    t = text.replace(" ", "").replace("⊕", "+")
    m = re.fullmatch(r"H\((\d+),(\d+)\)(?:\+F\((\d+)\))?", t)
    if m:
        nn, mm = int(m.group(1)), int(m.group(2))
        k = int(m.group(3) or 0)
        return heisenberg(nn, mm, k)
    m = re.fullmatch(r"A[(_{]?(\d+)[,_](\d+)[,_](\d+)[)}]?", t)
    if m:
        return Label("A", tuple(int(g) for g in m.groups()))
    m = re.fullmatch(r"A_?\{?(381|387)\}?", t)
    if m:
        return Label("A" + m.group(1))
    m = re.fullmatch(r"L_?\{?7,?\(?(\d+)\)?\}?(?:\[(A|B)\])?", t)
    if m:
        return Label("L7", (int(m.group(1)),), m.group(2))
    if t in ("L5", "L5_2Lie"):
        return Label("L5")
    m = re.fullmatch(r"F\((\d+)\)", t)
    if m:
        if n is None:
            raise InvalidParameters("abelian label F(d) needs an arity")
        return abelian(n, int(m.group(1)))
    raise InvalidParameters(f"cannot parse label {text!r}")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def _seq(*parts) -> tuple:
    out = []
    for p in parts:
        if isinstance(p, range):
            out.extend(p)
        else:
            out.append(p)
    return tuple(sorted(out))


def _a_table(n: int, d: int, k: int) -> dict:
    """Rows of the A_{n,d,k} families as {tuple: target index}, 1-based."""
    r = lambda a, b: range(a, b + 1)  # noqa: E731  inclusive ranges
    if d == n + 2 and k == 1:
        # nilpotent of class three
        return {_seq(r(1, n)): n + 1, _seq(r(2, n + 1)): n + 2}
    if d == n + 3 and k == 1:
        return {_seq(r(2, n + 1)): n + 3, _seq(r(1, n)): n + 2}
    if d == n + 4:
        if k == 1:
            return {_seq(r(1, n)): n + 3, _seq(r(2, n + 1)): n + 4}
        if k == 2:
            if n < 3:
                raise InvalidParameters("A_{n,n+4,2} needs n >= 3")
            return {_seq(r(1, n)): n + 3, _seq(r(3, n + 2)): n + 4}
        if k == 3:
            return {
                _seq(r(1, n)): n + 1,
                _seq(r(2, n), n + 2): n + 3,
                _seq(1, r(3, n), n + 2): n + 4,
            }
    if d == n + 5:
        if k == 1:
            return {_seq(r(1, n)): n + 4, _seq(r(2, n + 1)): n + 5}
        if k == 2:
            if n < 3:
                raise InvalidParameters("A_{n,n+5,2} needs n >= 3")
            return {_seq(r(1, n)): n + 4, _seq(r(3, n + 2)): n + 5}
        if k == 3:
            if n < 4:
                raise InvalidParameters("A_{n,n+5,3} needs n >= 4")
            return {_seq(r(1, n)): n + 5, _seq(r(4, n + 3)): n + 4}
        if k == 4:
            return {
                _seq(r(1, n)): n + 3,
                _seq(r(2, n + 1)): n + 4,
                _seq(1, r(3, n + 1)): n + 5,
            }
        if k == 5:
            return {
                _seq(r(1, n)): n + 3,
                _seq(r(2, n + 1)): n + 4,
                _seq(r(2, n), n + 2): n + 5,
            }
        if k == 6:
            return {
                _seq(r(1, n)): n + 3,
                _seq(r(2, n + 1)): n + 4,
                _seq(r(3, n + 2)): n + 5,
            }
        if k == 7:
            if n < 3:
                raise InvalidParameters("A_{n,n+5,7} needs n >= 3")
            return {
                _seq(r(1, n)): n + 1,
                _seq(1, 2, r(4, n), n + 2): n + 5,
                _seq(1, r(3, n), n + 2): n + 4,
                _seq(r(2, n), n + 2): n + 3,
            }
    raise InvalidParameters(f"no A family entry A({n},{d},{k})")


_L7 = {
    1: {(1, 2): 4, (1, 3): 5},
    2: {(1, 2): 4, (1, 3): 5, (2, 3): 6},
    4: {(1, 2): 5, (3, 4): 6},
    5: {(1, 2): 5, (2, 3): 6, (2, 4): 7},
    6: {(1, 2): 5, (2, 3): 6, (3, 4): 7},
    7: {(1, 2): 5, (3, 4): 5, (2, 3): 6, (2, 4): 7},
    8: {(1, 2): 5, (3, 4): 5, (1, 3): 6, (2, 4): 7},
    9: {(1, 5): 6, (3, 4): 6, (2, 5): 7},
    10: {(1, 2): 6, (3, 4): 6, (1, 5): 7, (2, 3): 7},
}

# L7(3) has two competing tables that disagree on [e3,e4]; both are offered.
_L7_3 = {
    "A": {(1, 2): 5, (3, 4): 5, (1, 3): 6},
    "B": {(1, 2): 5, (3, 4): 6},
}


def _from_rows(n: int, d: int, F: Field, rows: dict) -> NLieAlgebra:
    return NLieAlgebra.from_table(n, d, F, {key: {val: 1} for key, val in rows.items()})


def build(label: Label, field: Field) -> NLieAlgebra:
    """The algebra named by ``label`` over ``field``."""
    return _build(label, field)


@lru_cache(maxsize=None)
def _build(label: Label, F: Field) -> NLieAlgebra:
    f, p = label.family, label.params
    if f == "Abelian":
        n, d = p
        if n < 2 or d < 0:
            raise InvalidParameters(f"bad abelian parameters {p}")
        return NLieAlgebra.abelian(n, d, F)
    if f == "H":
        n, m = p
        if n < 2 or m < 1:
            raise InvalidParameters(f"H(n,m) needs n >= 2, m >= 1, got {p}")
        d = m * n + 1
        rows = {tuple(range(n * (i - 1) + 1, n * i + 1)): d for i in range(1, m + 1)}
        return _from_rows(n, d, F, rows)
    if f == "HplusF":
        n, m, k = p
        if k < 0:
            raise InvalidParameters("negative abelian summand")
        return direct_sum(_build(Label("H", (n, m)), F), NLieAlgebra.abelian(n, k, F))
    if f == "A":
        n, d, k = p
        if n < 2:
            raise InvalidParameters("arity must be at least 2")
        return _from_rows(n, d, F, _a_table(n, d, k))
    if f == "A381":
        return _from_rows(3, 8, F, {(1, 2, 3): 8, (4, 5, 6): 7})
    if f == "A387":
        return _from_rows(3, 8, F, {(1, 2, 3): 7, (4, 5, 6): 8})
    if f == "L7":
        (i,) = p
        if i == 3:
            if label.reading not in _L7_3:
                raise DisputedEntry("L7(3) is ambiguous; choose reading 'A' or 'B'")
            return _from_rows(2, 7, F, _L7_3[label.reading])
        if i not in _L7:
            raise InvalidParameters(f"L7({i}) does not exist")
        return _from_rows(2, 7, F, _L7[i])
    if f == "L5":
        return _from_rows(2, 5, F, {(1, 2): 4, (1, 3): 5})
    raise InvalidParameters(f"unknown family {f!r}")


# ---------------------------------------------------------------------------
# lists
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogList:
    n: int
    d: int
    labels: tuple
    complete: bool

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)


def list_for(n: int, d: int, field: Field | None = None) -> CatalogList:
    """Class-two algebras of arity n and dimension d known to the catalog.

    ``complete`` is True where a full list is known (d <= n+2, d = n+4,
    d = n+5 for n >= 3; d <= n+2 and d = n+3, n+5 for n = 2).
    """
    if n < 2 or d < 0:
        raise InvalidParameters(f"bad (n, d) = ({n}, {d})")
    if d <= n:
        return CatalogList(n, d, (abelian(n, d),), True)
    if d == n + 1:
        return CatalogList(n, d, (heisenberg(n, 1),), True)
    if d == n + 2:
        return CatalogList(n, d, (heisenberg(n, 1, 1),), True)
    if n == 2:
        return _list_n2(d)
    if d == n + 3:
        return CatalogList(n, d, (heisenberg(n, 1, 2), Label("A", (n, n + 3, 1))), False)
    if d == n + 4:
        labels = [heisenberg(n, 1, 3)] + [Label("A", (n, n + 4, k)) for k in (1, 2, 3)]
        if n == 3:
            labels.append(heisenberg(3, 2))
        return CatalogList(n, d, tuple(labels), True)
    if d == n + 5:
        labels = [heisenberg(n, 1, 4)]
        if n == 3:
            labels += [heisenberg(3, 2, 1), Label("A387")]
        if n == 4:
            labels.append(heisenberg(4, 2))
        labels += [Label("A", (n, n + 5, k)) for k in range(1, 8) if not (k == 3 and n < 4)]
        return CatalogList(n, d, tuple(labels), True)
    labels = [heisenberg(n, m, d - m * n - 1) for m in range(1, (d - 1) // n + 1)]
    return CatalogList(n, d, tuple(labels), False)


def _list_n2(d: int) -> CatalogList:
    if d == 5:
        return CatalogList(2, 5, (heisenberg(2, 2), heisenberg(2, 1, 2), Label("L5")), True)
    if d == 6:
        labels = (heisenberg(2, 1, 3), Label("A", (2, 6, 1)), Label("A", (2, 6, 3)), heisenberg(2, 2, 1))
        return CatalogList(2, 6, labels, False)
    if d == 7:
        labels = [heisenberg(2, 1, 4), heisenberg(2, 2, 2), heisenberg(2, 3)]
        labels += [Label("L7", (i,)) for i in range(1, 11) if i != 3]
        # L7(3) is left out: it has two competing readings
        return CatalogList(2, 7, tuple(labels), False)
    labels = [heisenberg(2, m, d - 2 * m - 1) for m in range(1, (d - 1) // 2 + 1)]
    return CatalogList(2, d, tuple(labels), False)


def all_labels(n: int) -> list[Label]:
    """Every constructible non-n=2-only catalog label for arity n."""
    out = [heisenberg(n, 1), heisenberg(n, 1, 1), heisenberg(n, 2)]
    out += [heisenberg(n, 1, k) for k in (2, 3, 4)]
    if n == 3:
        out += [heisenberg(3, 2, 1), Label("A381"), Label("A387")]
    out += [Label("A", (n, n + 2, 1)), Label("A", (n, n + 3, 1))]
    for d, ks in ((n + 4, (1, 2, 3)), (n + 5, range(1, 8))):
        for k in ks:
            try:
                _a_table(n, d, k)
            except InvalidParameters:
                continue
            out.append(Label("A", (n, d, k)))
    if n == 2:
        out += [heisenberg(2, 3), heisenberg(2, 2, 2), Label("L5")]
        out += [Label("L7", (i,)) for i in range(1, 11) if i != 3]
        out += [Label("L7", (3,), "A"), Label("L7", (3,), "B")]
    return out

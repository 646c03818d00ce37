"""Random basis changes for round-trip testing."""

from __future__ import annotations

import random

from .linalg import Field, det, identity


def random_invertible(F: Field, d: int, rng: random.Random) -> list:
    """Uniform random invertible matrix over a finite field."""
    if not F.is_finite:
        return random_unimodular(F, d, rng)
    while True:
        m = [[rng.randrange(F.p) for _ in range(d)] for _ in range(d)]
        if det(F, m):
            return m


def random_unimodular(F: Field, d: int, rng: random.Random, steps: int | None = None, bound: int = 2) -> list:
    """Integral matrix of determinant +-1 built from elementary operations."""
    m = identity(F, d)
    if d < 2:
        return [[F(rng.choice((1, -1)))] for _ in range(d)]
    for _ in range(steps if steps is not None else 3 * d):
        i, j = rng.sample(range(d), 2)
        c = F(rng.choice([x for x in range(-bound, bound + 1) if x]))
        for r in range(d):
            m[r][i] = F.add(m[r][i], F.mul(c, m[r][j]))
    perm = list(range(d))
    rng.shuffle(perm)
    signs = [F(rng.choice((1, -1))) for _ in range(d)]
    return [[F.mul(signs[c], m[r][perm[c]]) for c in range(d)] for r in range(d)]

"""Exact computations with nilpotent n-Lie (Filippov) algebras of class two."""

from .linalg import QQ, GF, Field, Subspace
from .algebra import NLieAlgebra

__all__ = ["QQ", "GF", "Field", "Subspace", "NLieAlgebra"]

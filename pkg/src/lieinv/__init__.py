"""Counting and finding generalized Casimir invariants of Lie algebras with a nontrivial Levi factor."""

from .catalog import catalog_entries, catalog_lookup
from .core import LieAlgebra, change_basis, direct_sum, jacobi_check
from .formats import emit_algebra, emit_polynomial, parse_algebra, parse_polynomial
from .invariants import full_report, functional_independence_count, is_invariant, num_invariants, polynomial_invariants
from .polynomial import Polynomial, VectorField
from .semidirect import LeviPair, semidirect_sum

__all__ = [
    "LieAlgebra",
    "LeviPair",
    "Polynomial",
    "VectorField",
    "catalog_entries",
    "catalog_lookup",
    "change_basis",
    "direct_sum",
    "emit_algebra",
    "emit_polynomial",
    "full_report",
    "functional_independence_count",
    "is_invariant",
    "jacobi_check",
    "num_invariants",
    "parse_algebra",
    "parse_polynomial",
    "polynomial_invariants",
    "semidirect_sum",
]

"""Exact integer linear algebra and finitely generated abelian groups."""

from .groups import (FgAbelianGroup, GroupHom, PresentedGroup, binary_functor,
                     direct_sum, group_from_relations, homology_of_pair,
                     induced_hom, is_exact_at)
from .matrix import IntMatrix, determinant
from .smith import (Lattice, SmithDecomposition, invariant_factors, kernel_basis,
                    smith_normal_form, solve_integer)
from .sparse import SparseReport, sparse_invariant_factors

__all__ = [
    "FgAbelianGroup", "GroupHom", "IntMatrix", "Lattice", "PresentedGroup",
    "SmithDecomposition", "SparseReport", "binary_functor", "determinant",
    "direct_sum", "group_from_relations", "homology_of_pair", "induced_hom",
    "invariant_factors", "is_exact_at", "kernel_basis", "smith_normal_form",
    "solve_integer", "sparse_invariant_factors",
]

"""Exact-arithmetic toolkit for the algebras carried by m-Dyck paths.

Three models of one graded structure: colored planar binary trees, m-Dyck
paths with the m-Tamari order, and simplices of dendriform posets.  All
coefficients are exact rationals; every structural statement ships with an
exhaustive finite verification.
"""

from .exactlin import ExactMatrix, LinComb, Rational, matrix_rank, span_contains
from .paths import DyckPath, enumerate_paths, path_product, phi
from .series import TruncatedSeries, fuss_catalan, series_solve_free
from .tamari import TamariLattice, build_lattice
from .trees import ColoredTree, enumerate_Bm, graft, tree_product

__all__ = [
    "ColoredTree",
    "DyckPath",
    "ExactMatrix",
    "LinComb",
    "Rational",
    "TamariLattice",
    "TruncatedSeries",
    "build_lattice",
    "enumerate_Bm",
    "enumerate_paths",
    "fuss_catalan",
    "graft",
    "matrix_rank",
    "path_product",
    "phi",
    "series_solve_free",
    "span_contains",
    "tree_product",
]

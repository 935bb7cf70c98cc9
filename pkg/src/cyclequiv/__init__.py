"""Equivalence of cyclic codes through affine maps of cyclotomic cosets,
partitions of all cyclic codes of a length, and distance-driven searches."""
from .algebra import FieldSpec, Poly, format_poly, gf, parse_poly
from .codes import (CodeRecord, CyclicCodeSpec, GeneratorMatrix, QCCodeSpec, circulant_matrix,
                    extend, puncture, qc_matrix, shorten)
from .cosets import (CosetMultiset, coset_table, coset_to_poly, cyclotomic_cosets, format_multiset,
                     parse_multiset, poly_to_coset, split_length)
from .distance import DistanceResult, min_distance, upper_bound_search, weight_enumerator
from .equivalence import (AffineWitness, EquivVerdict, Status, affine_equivalent,
                          brute_force_equivalent, verdict)
from .partition import BudgetError, PartitionRecord, partition_cyclic

__version__ = "0.1.0"

__all__ = [
    "AffineWitness", "BudgetError", "CodeRecord", "CosetMultiset", "CyclicCodeSpec",
    "DistanceResult", "EquivVerdict", "FieldSpec", "GeneratorMatrix", "PartitionRecord", "Poly",
    "QCCodeSpec", "Status", "affine_equivalent", "brute_force_equivalent", "circulant_matrix",
    "coset_table", "coset_to_poly", "cyclotomic_cosets", "extend", "format_multiset", "format_poly",
    "gf", "min_distance", "parse_multiset", "parse_poly", "partition_cyclic", "poly_to_coset",
    "puncture", "qc_matrix", "shorten", "split_length", "upper_bound_search", "verdict",
    "weight_enumerator",
]

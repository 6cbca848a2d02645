"""Relabeling of permutation codes under the l-infinity metric."""

from .analysis import difference_set, involution_set, min_distance, minimal_degree
from .groups import PermutationCode, agl, closure, cyclic_group, dihedral
from .labeling import (
    LabelingCertificate,
    cyclic_optimal_labeling,
    distance_one_labeling,
    relabel,
    worst_labeling,
)
from .perm import Permutation, compose, conjugate, inverse, linf_distance, weight
from .search import exact_lmax, exact_lmin, min_neighboring_order, two_distance

__version__ = "0.1.0"

"""Metric analysis of a code: difference set, minimal distance, involutions."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .groups import CodeError, PermutationCode
from .perm import Permutation, compose, cycle_count, cycles, inverse, is_involution, weight

# |C|^2 quotients are materialized; beyond this a non-group code is rejected
MAX_NONGROUP_SIZE = 3000


@dataclass(frozen=True)
class DifferenceSet:
    """{g h^-1 : g, h in C, g != h}, kept sorted."""

    n: int
    elements: tuple
    source_is_group: bool

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class InvolutionEdges:
    involution: Permutation
    edges: frozenset


def difference_set(code: PermutationCode) -> DifferenceSet:
    if len(code) < 2:
        raise CodeError("the difference set needs at least two codewords")
    if code.is_group:
        ident = code.identity
        elems = tuple(e for e in code.elements if e != ident)
        return DifferenceSet(code.n, elems, True)
    if len(code) > MAX_NONGROUP_SIZE:
        raise CodeError(
            f"non-group code of size {len(code)} exceeds the difference-set guard {MAX_NONGROUP_SIZE}")
    invs = [inverse(h) for h in code.elements]
    out = set()
    for i, g in enumerate(code.elements):
        for j, hinv in enumerate(invs):
            if i != j:
                out.add(compose(g, hinv))
    return DifferenceSet(code.n, tuple(sorted(out)), False)


def min_distance(code: PermutationCode) -> int:
    """Minimal l-infinity distance between distinct codewords."""
    return min(weight(f) for f in difference_set(code))


def involution_set(code: PermutationCode) -> frozenset:
    """I(C): the involutions among the difference set (empty for |C| < 2)."""
    if len(code) < 2:
        return frozenset()
    return frozenset(f for f in difference_set(code) if is_involution(f))


def edge_set(g: Permutation) -> InvolutionEdges:
    """E(g): one edge {u, g(u)} per 2-cycle of the involution g."""
    if not is_involution(g):
        raise ValueError("edge_set needs an involution")
    edges = frozenset(c for c in cycles(g) if len(c) == 2)
    return InvolutionEdges(g, edges)


def support_size(g: Permutation) -> int:
    return sum(1 for i, x in enumerate(g.images, 1) if x != i)


def minimal_degree(code: PermutationCode) -> int:
    """Fewest points moved by a non-identity element of a group code."""
    if not code.is_group:
        raise CodeError("minimal degree is defined for group codes")
    if len(code) < 2:
        raise CodeError("the trivial group has no minimal degree")
    return min(support_size(g) for g in code.elements if not g.is_identity())


def cycle_count_histogram(dset) -> dict:
    """Map cycle count c(f) -> number of difference-set elements with it."""
    return dict(sorted(Counter(cycle_count(f) for f in dset).items()))

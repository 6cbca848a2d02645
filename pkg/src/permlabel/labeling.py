"""Explicit labelings: relabeling by conjugation and the constructive labelings.

A labeling ``l`` turns a code C into l C l^-1.  Each constructor returns a
:class:`LabelingCertificate` whose ``achieved_distance`` has been computed by
evaluating the relabeled code, never taken from a formula.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .analysis import difference_set, involution_set, min_distance
from .groups import CodeError, PermutationCode, cyclic_group
from .perm import (
    CycleType,
    DegreeMismatchError,
    Permutation,
    conjugate,
    conjugator,
    cycle_type,
    cycles,
    is_single_cycle,
)

KINDS = ("worst", "distance_one", "cyclic_optimal", "from_pair", "searched")


@dataclass(frozen=True)
class LabelingCertificate:
    label: Permutation
    achieved_distance: int
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")


def relabel(code: PermutationCode, l: Permutation) -> PermutationCode:
    if l.n != code.n:
        raise DegreeMismatchError(f"labeling of degree {l.n} for a code of degree {code.n}")
    return PermutationCode(code.n, tuple(conjugate(l, f) for f in code.elements),
                           code.is_group, code.provenance)


def certify(code: PermutationCode, l: Permutation, kind: str) -> LabelingCertificate:
    return LabelingCertificate(l, min_distance(relabel(code, l)), kind)


def verify_certificate(code: PermutationCode, cert: LabelingCertificate) -> bool:
    """Recompute the relabeled distance and compare with the claim."""
    return cert.label.n == code.n and min_distance(relabel(code, cert.label)) == cert.achieved_distance


def snake_sequence(n: int) -> list:
    """1, 2, the even numbers ascending, then the odd numbers descending to 3.

    Read cyclically, consecutive entries differ by at most 2.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n <= 3:
        return list(range(1, n + 1))
    return [1, 2] + list(range(4, n + 1, 2)) + list(range(n if n % 2 else n - 1, 2, -2))


def snake_cycle(n: int) -> Permutation:
    """A single n-cycle of weight at most 2."""
    return Permutation.from_cycles([snake_sequence(n)], n)


def low_weight_representative(t: CycleType) -> Permutation:
    """A permutation of cycle type ``t`` and weight at most 2.

    Each cycle is a snake cycle on its own block of consecutive integers,
    longest cycles first.
    """
    n = t.n
    cyc = []
    start = 0
    for length in t.lengths:
        cyc.append([start + x for x in snake_sequence(length)])
        start += length
    return Permutation.from_cycles(cyc, n)


def worst_labeling(code: PermutationCode) -> LabelingCertificate:
    """A labeling with relabeled minimal distance at most 2.

    Conjugates one non-identity difference (the lexicographically smallest)
    onto a weight-2 representative of its conjugacy class.
    """
    if len(code) < 2:
        raise CodeError("worst_labeling needs at least two codewords")
    if code.contains_identity:
        f = next(e for e in code.elements if not e.is_identity())
    else:
        f = difference_set(code).elements[0]
    target = low_weight_representative(cycle_type(f))
    return certify(code, conjugator(f, target), "worst")


def distance_one_labeling(code: PermutationCode) -> LabelingCertificate | None:
    """A distance-1 labeling, or None when the difference set has no involution."""
    invs = involution_set(code)
    if not invs:
        return None
    g = min(invs)
    img = [0] * code.n
    nxt = 1
    for c in cycles(g):
        if len(c) == 2:
            img[c[0] - 1], img[c[1] - 1] = nxt, nxt + 1
            nxt += 2
    for c in cycles(g):
        if len(c) == 1:
            img[c[0] - 1] = nxt
            nxt += 1
    return certify(code, Permutation(img), "distance_one")


def cyclic_k(n: int) -> int:
    """ceil((sqrt(4n - 3) - 1) / 2) in exact integer arithmetic."""
    if n < 1:
        raise ValueError("n must be positive")
    m = 4 * n - 3
    s = isqrt(m)
    if s * s == m:
        return (s - 1) // 2
    return (s + 1) // 2


def _cyclic_label(seq: list, k: int) -> Permutation:
    # seq[j - 1] is a_j in the cycle (a_1, ..., a_n)
    n = len(seq)
    label = {}
    for i in range(1, k + 1):
        label[seq[i - 1]] = i
    for i in range(n - k + 1, n + 1):
        j = (n + 1 - i) * (2 * k - n + i) // 2 + 1
        label[seq[j - 1]] = i
    rest = iter(range(k + 1, n - k + 1))
    for a in seq:
        if a not in label:
            label[a] = next(rest)
    return Permutation(label[x] for x in range(1, n + 1))


def cyclic_optimal_labeling(f: Permutation) -> LabelingCertificate:
    """Optimal labeling of the cyclic group generated by the n-cycle ``f``.

    Achieves n - k with k = ceil((sqrt(4n-3)-1)/2).  The cycle is read from
    its smallest point; if that orientation falls short the inverse
    orientation is tried.
    """
    n = f.n
    if n < 2 or not is_single_cycle(f):
        raise CodeError("cyclic_optimal_labeling needs a single n-cycle with n >= 2")
    k = cyclic_k(n)
    code = cyclic_group(f)
    seq = list(cycles(f)[0])
    best = None
    for orientation in (seq, [seq[0]] + seq[:0:-1]):
        cert = certify(code, _cyclic_label(orientation, k), "cyclic_optimal")
        if cert.achieved_distance >= n - k:
            return cert
        if best is None or cert.achieved_distance > best.achieved_distance:
            best = cert
    return best


def relabeled_generator(f: Permutation, cert: LabelingCertificate) -> Permutation:
    return conjugate(cert.label, f)

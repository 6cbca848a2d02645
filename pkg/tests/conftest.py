"""Shared brute-force oracles and random generators.

The oracles here enumerate definitions directly and share no code with the
search paths they check.
"""

import itertools
import math
import random

import pytest
from hypothesis import strategies as st

from permlabel.groups import PermutationCode, closure
from permlabel.perm import Permutation


def perm_from_cycles(n, *cyc):
    return Permutation.from_cycles(cyc, n)


def all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def naive_weight(img):
    return max(abs(x - i) for i, x in enumerate(img, 1))


def naive_min_distance(elements):
    """All unordered pairs, max |f(i) - g(i)|."""
    best = None
    for f, g in itertools.combinations(elements, 2):
        d = max(abs(a - b) for a, b in zip(f.images, g.images))
        best = d if best is None else min(best, d)
    return best


def naive_conj_images(l, f):
    # (l f l^-1)(l(x)) = l(f(x))
    n = len(f.images)
    out = [0] * n
    for x in range(1, n + 1):
        out[l.images[x - 1] - 1] = l.images[f.images[x - 1] - 1]
    return tuple(out)


def brute_force_distances(elements):
    """min distance of l C l^-1 for every l in S_n."""
    n = elements[0].n
    out = []
    for l in itertools.permutations(range(1, n + 1)):
        lp = Permutation(l)
        conj = [Permutation(naive_conj_images(lp, f)) for f in elements]
        out.append(naive_min_distance(conj))
    return out


def brute_lmax(elements):
    return max(brute_force_distances(elements))


def brute_lmin(elements):
    return min(brute_force_distances(elements))


def brute_two_distance(elements):
    return brute_lmax(elements) >= 2


def random_perm(rng, n):
    img = list(range(1, n + 1))
    rng.shuffle(img)
    return Permutation(img)


def random_code(rng, n_max=8, size_min=2, size_max=12, n_min=2):
    n = rng.randint(n_min, n_max)
    size = rng.randint(size_min, min(size_max, math.factorial(n)))
    elems = set()
    if rng.random() < 0.5:
        elems.add(Permutation.identity(n))
    while len(elems) < size:
        elems.add(random_perm(rng, n))
    return PermutationCode.from_elements(elems, n)


def random_group(rng, n_max=7, n_min=3):
    n = rng.randint(n_min, n_max)
    gens = [random_perm(rng, n) for _ in range(rng.randint(1, 2))]
    if all(g.is_identity() for g in gens):
        gens.append(Permutation.from_cycles([(1, 2)], n))
    return closure(gens)


@pytest.fixture
def rng():
    return random.Random(20111)


@st.composite
def perms(draw, n=None, n_min=1, n_max=8):
    if n is None:
        n = draw(st.integers(n_min, n_max))
    img = draw(st.permutations(list(range(1, n + 1))))
    return Permutation(img)


@st.composite
def perm_triples(draw, n_min=1, n_max=8):
    n = draw(st.integers(n_min, n_max))
    return tuple(draw(perms(n=n)) for _ in range(3))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)

"""Exit criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line; the lines are also
collected into an "acceptance criteria" section of the pytest summary.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import itertools
import math
import random
import time

import pytest

from conftest import all_perms, random_code, random_group
from permlabel.analysis import difference_set, edge_set, involution_set, min_distance
from permlabel.bounds import (
    agl_asymptotic_params,
    agl_cycle_index,
    cycle_index_poly,
    cyclic_lmax_formula,
    dihedral_asymptotic_params,
    prob_bound_optimize,
    theorem8_counting_check,
    CycleIndexPolynomial,
)
from permlabel.groups import agl, cyclic_group
from permlabel.labeling import (
    cyclic_k,
    cyclic_optimal_labeling,
    distance_one_labeling,
    relabel,
    relabeled_generator,
    worst_labeling,
)
from permlabel.perm import (
    Permutation,
    compose,
    conjugate,
    cycle_type,
    linf_distance,
    reversal,
    weight,
)
from permlabel.search import (
    Graph,
    NeighboringPair,
    exact_lmax,
    exact_lmin,
    hamiltonian_path_exists,
    hamiltonian_to_code,
    labeling_from_pair,
    labeling_to_path,
    min_neighboring_order,
    neighboring_pair_check,
    path_to_labeling,
    two_distance,
)

pytestmark = pytest.mark.acceptance


@pytest.fixture
def report(request):
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])

    def emit(number, title, checks, elapsed, limit):
        """``checks`` maps a short label to a bool; runtime is checked against ``limit``."""
        checks = dict(checks)
        checks[f"runtime {elapsed:.2f}s < {limit}s"] = elapsed < limit
        ok = all(checks.values())
        failed = [k for k, v in checks.items() if not v]
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {title}"
        if failed:
            line += " | failed: " + "; ".join(failed)
        print(line)
        lines.append((number, line))
        return ok, failed

    return emit


def cyc(n):
    return cyclic_group(Permutation.from_cycles([range(1, n + 1)], n))


def labeled_two_distance(code):
    """Exhaustive: is there a labeling l with |l f(x) - l g(x)| >= 2 somewhere, for every pair?"""
    n = code.n
    imgs = [tuple(x - 1 for x in f.images) for f in code.elements]
    pairs = list(itertools.combinations(imgs, 2))
    for l in itertools.permutations(range(n)):
        if all(any(abs(l[f[x]] - l[g[x]]) >= 2 for x in range(n)) for f, g in pairs):
            return True
    return False


def test_criterion_01_natural_agl(report):
    start = time.perf_counter()
    primes = (3, 5, 7, 11, 13, 17, 19, 23)
    checks = {f"p={p}": min_distance(agl(p)) == (p - 1) // 2 for p in primes}
    ok, failed = report(1, "natural AGL distance is (p-1)/2", checks, time.perf_counter() - start, 1)
    assert ok, failed


def test_criterion_02_small_primes(report):
    start = time.perf_counter()
    checks = {}
    for p, want in ((3, 1), (5, 2), (7, 3)):
        out = exact_lmax(agl(p))
        checks[f"L_max(agl({p}))={want}"] = out.exhaustive and out.value == want
    ok, failed = report(2, "exact L_max of agl(3), agl(5), agl(7)", checks, time.perf_counter() - start, 10)
    assert ok, failed


def test_criterion_03_cyclic(report):
    start = time.perf_counter()
    checks = {}
    for n in range(3, 10):
        want = n - cyclic_k(n)
        out = exact_lmax(cyc(n))
        checks[f"exact n={n}"] = out.exhaustive and out.value == want == cyclic_lmax_formula(n)
        f = Permutation.from_cycles([range(1, n + 1)], n)
        checks[f"construction n={n}"] = cyclic_optimal_labeling(f).achieved_distance == want
    rng = random.Random(4)
    for n in (50, 200, 1000):
        f = Permutation.from_cycles([rng.sample(range(1, n + 1), n)], n)
        cert = cyclic_optimal_labeling(f)
        checks[f"n={n} >= n-k"] = min_distance(relabel(cyclic_group(f), cert.label)) >= n - cyclic_k(n)
    f10 = Permutation.from_cycles([range(1, 11)], 10)
    g = relabeled_generator(f10, cyclic_optimal_labeling(f10))
    checks["golden n=10"] = g == Permutation.from_cycles([(1, 2, 3, 10, 4, 9, 8, 5, 6, 7)], 10)
    ok, failed = report(3, "cyclic formula and construction", checks, time.perf_counter() - start, 30)
    assert ok, failed


def test_criterion_04_worst(report):
    start = time.perf_counter()
    rng = random.Random(44)
    bad_worst = bad_one = bad_lmin = 0
    for _ in range(200):
        c = random_code(rng, n_max=8, size_min=2, size_max=12)
        if worst_labeling(c).achieved_distance > 2:
            bad_worst += 1
        has_inv = bool(involution_set(c))
        cert = distance_one_labeling(c)
        if has_inv != (cert is not None and cert.achieved_distance == 1):
            bad_one += 1
        if exact_lmin(c).value != (1 if has_inv else 2):
            bad_lmin += 1
    checks = {"worst <= 2": bad_worst == 0, "distance-1 iff involution": bad_one == 0,
              "exact L_min in {1,2}": bad_lmin == 0}
    ok, failed = report(4, "worst labeling on 200 random codes", checks, time.perf_counter() - start, 60)
    assert ok, failed


def test_criterion_05_two_distance(report):
    start = time.perf_counter()
    rng = random.Random(55)
    disagree = 0
    for _ in range(200):
        c = random_code(rng, n_max=7, size_min=2, size_max=12)
        if two_distance(c).value != labeled_two_distance(c):
            disagree += 1
    checks = {f"agreement ({disagree} disagreements)": disagree == 0}
    ok, failed = report(5, "2-DISTANCE vs exhaustive labelings", checks, time.perf_counter() - start, 60)
    assert ok, failed


def test_criterion_06_reduction(report):
    start = time.perf_counter()
    rng = random.Random(66)
    mismatch = bad_path = bad_label = 0
    for _ in range(200):
        n = rng.randint(2, 9)
        density = rng.random()
        edges = [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < density]
        g = Graph(n, frozenset(edges))
        ham = hamiltonian_path_exists(g)
        code = hamiltonian_to_code(g)
        two = two_distance(code)
        if ham.value != two.value:
            mismatch += 1
            continue
        if not ham.value:
            continue
        if len(code) > 1 and min_distance(relabel(code, path_to_labeling(ham.witness))) < 2:
            bad_path += 1
        path = labeling_to_path(path_to_labeling(two.witness))
        steps = {frozenset(s) for s in zip(path, path[1:])}
        avoids = all(not {frozenset(e) for e in edge_set(t).edges} <= steps for t in involution_set(code))
        if not (avoids and all(g.has_edge(u, v) for u, v in zip(path, path[1:]))):
            bad_label += 1
    checks = {"decision agreement": mismatch == 0, "path -> labeling": bad_path == 0,
              "labeling -> path": bad_label == 0}
    ok, failed = report(6, "Hamiltonian path reduction on 200 graphs", checks, time.perf_counter() - start, 120)
    assert ok, failed


def test_criterion_07_neighboring(report):
    start = time.perf_counter()
    g7 = agl(7)
    # the sets are given on the 0-indexed domain GF(7); points here are shifted by one
    A, B = {1, 2, 3}, {5, 6, 7}
    checks = {"agl(7) pair {0,1,2},{4,5,6} is neighboring": neighboring_pair_check(g7, A, B)}
    out7 = min_neighboring_order(g7)
    checks[f"O(agl(7)) = 6 exhaustively (got {out7.value})"] = out7.exhaustive and out7.value == 6
    try:
        dist = labeling_from_pair(g7, NeighboringPair(A, B)).achieved_distance
    except ValueError:
        dist = None
    checks[f"labeling from the pair has distance >= 2 (got {dist})"] = dist is not None and dist >= 2
    out5 = min_neighboring_order(agl(5), cap=10)
    checks["agl(5) has no pair up to cap 10"] = out5.witness is None and out5.value == math.inf
    L = exact_lmax(cyc(7)).value
    oc = min_neighboring_order(cyc(7))
    checks[f"cyclic n=7: O={oc.value} in [{7 - L + 1}, {2 * (7 - L)}]"] = \
        oc.exhaustive and 7 - L + 1 <= oc.value <= 2 * (7 - L) and (7 - L + 1, 2 * (7 - L)) == (3, 4)
    ok, failed = report(7, "neighboring sets", checks, time.perf_counter() - start, 60)
    assert ok, failed


def test_criterion_08_cycle_index(report):
    start = time.perf_counter()
    checks = {}
    for p in (3, 5, 7, 11, 13):
        direct = CycleIndexPolynomial((0,))
        for f in agl(p):
            if not f.is_identity():
                direct = direct + cycle_index_poly(f)
        checks[f"closed form p={p}"] = agl_cycle_index(p) == direct
    for p in (37, 41, 43):
        checks[f"binomial exceeds bound p={p}"] = theorem8_counting_check(p).binomial_exceeds_bound is True
    below = [p for p in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
             if theorem8_counting_check(p).binomial_exceeds_bound is False]
    checks["fails for some prime < 37"] = bool(below)
    ok, failed = report(8, "cycle-index machinery and counting inequality", checks,
                        time.perf_counter() - start, 10)
    assert ok, failed


def test_criterion_09_probabilistic(report):
    start = time.perf_counter()
    checks = {}
    for q in (101, 1009):
        rep = agl_asymptotic_params(q)
        closed = 1 / (q + 1) ** 2 + q * q / (q + 1) ** 2
        pf = rep.parameters["form_value"]
        checks[f"agl q={q} form value"] = abs(pf - closed) <= 1e-12 * closed and closed < 1
        checks[f"agl q={q} exact LHS valid"] = rep.valid and rep.lhs_value < 1
    for n in (37, 100, 1000):
        rep = dihedral_asymptotic_params(n)
        closed = 1 / (2 * n + 2) + 2 * n / (2 * n + 2)
        pf = rep.parameters["form_value"]
        checks[f"dihedral n={n} form value"] = abs(pf - closed) <= 1e-12 * closed and closed < 1
        checks[f"dihedral n={n} exact LHS valid"] = rep.valid
    rng = random.Random(99)
    unsound = 0
    for _ in range(100):
        g = random_group(rng, n_max=7)
        if len(g) < 2:
            continue
        rep = prob_bound_optimize(difference_set(g), g.n)
        if rep.valid and rep.guaranteed_distance > exact_lmax(g).value:
            unsound += 1
    checks["soundness on 100 random groups"] = unsound == 0
    ok, failed = report(9, "probabilistic bound", checks, time.perf_counter() - start, 120)
    assert ok, failed


def test_criterion_10_metric(report):
    start = time.perf_counter()
    s4 = all_perms(4)
    r4 = reversal(4)
    right = all(linf_distance(f, g) == linf_distance(compose(f, h), compose(g, h))
                for f, g, h in itertools.product(s4, repeat=3))
    conj = all(cycle_type(conjugate(l, f)) == cycle_type(f) for l, f in itertools.product(s4, repeat=2))
    rev = all(weight(conjugate(r4, f)) == weight(f) for f in s4)
    axioms = True
    for f, g in itertools.product(s4, repeat=2):
        d = linf_distance(f, g)
        axioms &= d == linf_distance(g, f) and (d == 0) == (f == g)
        axioms &= all(d <= linf_distance(f, h) + linf_distance(h, g) for h in s4)
    rng = random.Random(10)
    r8 = reversal(8)
    rand_ok = True
    for _ in range(10 ** 4):
        f, g, h = (Permutation(rng.sample(range(1, 9), 8)) for _ in range(3))
        d = linf_distance(f, g)
        rand_ok &= (d == linf_distance(compose(f, h), compose(g, h))
                    and cycle_type(conjugate(h, f)) == cycle_type(f)
                    and weight(conjugate(r8, f)) == weight(f)
                    and d == linf_distance(g, f) and (d == 0) == (f == g)
                    and d <= linf_distance(f, h) + linf_distance(h, g))
    checks = {"S_4 right invariance": right, "S_4 conjugation type": conj, "S_4 reversal weight": rev,
              "S_4 metric axioms": axioms, "10^4 random S_8 triples": rand_ok}
    ok, failed = report(10, "metric and algebra properties", checks, time.perf_counter() - start, 30)
    assert ok, failed

"""Exact searches over the labeling orbit of a code.

Budgets count search nodes and traversal order is fixed, so a run that
stops early stops at the same place every time.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable

from .analysis import difference_set, edge_set, involution_set, min_distance
from .groups import CodeError, PermutationCode
from .labeling import LabelingCertificate, relabel
from .perm import Permutation, conjugator, cycle_type, inverse, transposition


@dataclass(frozen=True)
class NeighboringPair:
    A: frozenset
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "B", frozenset(self.B))
        if self.A & self.B:
            raise ValueError("neighboring sets must be disjoint")

    @property
    def order(self) -> int:
        return len(self.A) + len(self.B)


@dataclass
class SearchOutcome:
    """Result of a search.

    ``value`` is exact when ``exhaustive``; otherwise it is the best bound
    found before the budget ran out (or None when nothing was found).
    """

    value: Any
    witness: Any = None
    exhaustive: bool = True
    nodes_explored: int = 0


class BudgetExceeded(Exception):
    pass


class _Budget:
    def __init__(self, nodes: int | None = None, seconds: float | None = None):
        self.limit = nodes
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.used = 0

    def tick(self) -> None:
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded
        if self.deadline is not None and (self.used & 1023) == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded


# -- exact L_max ----------------------------------------------------------------

def _edge_lists(perms: Iterable[Permutation]) -> list:
    """Per permutation, the unordered pairs {x, f(x)} it moves (0-indexed).

    f and f^-1 have equal weight under every labeling, so only one of each
    inverse pair is kept.
    """
    out = []
    seen = set()
    for f in perms:
        if f in seen:
            continue
        seen.add(f)
        seen.add(inverse(f))
        pairs = {(min(i, x - 1), max(i, x - 1)) for i, x in enumerate(f.images) if x - 1 != i}
        out.append(tuple(sorted(pairs)))
    return out


def value_order(n: int) -> list:
    """Label values extremes first: 1, n, 2, n-1, ... (0-indexed)."""
    out = []
    lo, hi = 0, n - 1
    while lo <= hi:
        out.append(lo)
        if hi != lo:
            out.append(hi)
        lo += 1
        hi -= 1
    return out


def _feasible(n: int, elems: list, d: int, budget: _Budget, roots: Iterable[int] | None = None):
    """A labeling (list point -> value, 0-indexed) giving every element weight >= d.

    Values are placed extremes first, so the still-free values always form an
    interval [lo, hi].  An element survives while one of its pairs is either
    already at label distance >= d or can still reach it.
    """
    order = value_order(n)
    label = [-1] * n

    def bounds(depth):
        # free values after placing order[:depth]
        placed_lo = (depth + 1) // 2
        placed_hi = depth // 2
        return placed_lo, n - 1 - placed_hi

    def step(unsat, depth):
        lo, hi = bounds(depth)
        keep = []
        for pairs in unsat:
            alive = False
            done = False
            for a, b in pairs:
                la, lb = label[a], label[b]
                if la >= 0 and lb >= 0:
                    if abs(la - lb) >= d:
                        done = True
                        break
                elif la >= 0:
                    if lo <= hi and max(la - lo, hi - la) >= d:
                        alive = True
                elif lb >= 0:
                    if lo <= hi and max(lb - lo, hi - lb) >= d:
                        alive = True
                elif hi - lo >= d:
                    alive = True
            if done:
                continue
            if not alive:
                return None
            keep.append(pairs)
        return keep

    first_points = None

    def rec(unsat, depth):
        budget.tick()
        if not unsat:
            free = [x for x in range(n) if label[x] < 0]
            rest = order[depth:]
            for x, v in zip(free, sorted(rest)):
                label[x] = v
            return list(label)
        if depth == n:
            return None
        v = order[depth]
        candidates = range(n) if depth != 0 or roots is None else roots
        for x in candidates:
            if label[x] >= 0:
                continue
            # reversal symmetry: the point labeled 1 precedes the point labeled n
            if depth == 1 and x < first_points[0]:
                continue
            label[x] = v
            if depth == 0:
                first_points[0] = x
            nxt = step(unsat, depth + 1)
            if nxt is not None:
                found = rec(nxt, depth + 1)
                if found is not None:
                    return found
            label[x] = -1
        return None

    first_points = [0]
    if n == 1:
        return [0] if not elems else None
    return rec(list(elems), 0)


def _feasible_task(args):
    n, elems, d, root, nodes = args
    budget = _Budget(nodes)
    try:
        lab = _feasible(n, elems, d, budget, roots=[root])
        return lab, budget.used, False
    except BudgetExceeded:
        return None, budget.used, True


def _labels_to_perm(lab: list) -> Permutation:
    return Permutation(v + 1 for v in lab)


def _check_pre(code: PermutationCode):
    if len(code) < 2:
        raise CodeError("the search needs at least two codewords")


def exact_lmax(code: PermutationCode, budget_nodes: int | None = None,
               budget_seconds: float | None = None, threads: int = 1) -> SearchOutcome:
    """Maximal minimal distance over all relabelings of ``code``.

    Binary descent on the target distance, each step a feasibility
    backtracker.  The natural labeling supplies the starting lower bound.
    """
    _check_pre(code)
    n = code.n
    dset = difference_set(code)
    elems = _edge_lists(dset)
    budget = _Budget(budget_nodes, budget_seconds)
    lo = min_distance(code)
    best = Permutation.identity(n)
    hi = n - 1
    try:
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if threads > 1:
                lab = _parallel_feasible(n, elems, mid, budget, threads)
            else:
                lab = _feasible(n, elems, mid, budget)
            if lab is None:
                hi = mid - 1
            else:
                best = _labels_to_perm(lab)
                lo = min_distance(relabel(code, best))
    except BudgetExceeded:
        return SearchOutcome(lo, best, False, budget.used)
    return SearchOutcome(lo, best, True, budget.used)


def _parallel_feasible(n, elems, d, budget: _Budget, threads: int):
    remaining = None if budget.limit is None else max(budget.limit - budget.used, 0)
    tasks = [(n, elems, d, root, remaining) for root in range(n)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_feasible_task, tasks))
    budget.used += sum(r[1] for r in results)
    # take the first feasible root in traversal order, so the witness is canonical
    for lab, _, exceeded in results:
        if lab is not None:
            return lab
        if exceeded:
            raise BudgetExceeded
    return None


# -- exact L_min -----------------------------------------------------------------

def min_weight_in_class(t, budget: _Budget) -> tuple:
    """Smallest weight of a permutation with cycle type ``t``, with a witness.

    Tries weight bounds w = 0, 1, 2, ...; for each, builds sigma point by
    point with sigma(i) within w of i, closing cycles only onto lengths still
    required by ``t``.
    """
    n = t.n
    need_total = dict(t.multiplicities())
    for w in range(0, n):
        img = [0] * (n + 1)
        used = [False] * (n + 1)
        need = dict(need_total)

        def rec(i):
            budget.tick()
            if i > n:
                return all(v == 0 for v in need.values())
            if img[i]:
                return rec(i + 1)
            for j in range(max(1, i - w), min(n, i + w) + 1):
                if used[j]:
                    continue
                # follow the chain from j; if it returns to i, a cycle closes
                length = 1
                x = j
                while x != i and img[x]:
                    x = img[x]
                    length += 1
                if x == i:
                    if need.get(length, 0) == 0:
                        continue
                    need[length] -= 1
                    img[i] = j
                    used[j] = True
                    if rec(i + 1):
                        return True
                    need[length] += 1
                    img[i] = 0
                    used[j] = False
                else:
                    img[i] = j
                    used[j] = True
                    if rec(i + 1):
                        return True
                    img[i] = 0
                    used[j] = False
            return False

        if rec(1):
            return w, Permutation(img[1:])
    raise AssertionError("unreachable: weight n-1 always suffices")


def exact_lmin(code: PermutationCode, budget_nodes: int | None = None,
               budget_seconds: float | None = None) -> SearchOutcome:
    """Minimal minimal distance over all relabelings of ``code``.

    A relabeling can bring any single difference to the lowest weight of its
    conjugacy class and no lower, so L_min is the minimum over the distinct
    cycle types in the difference set.
    """
    _check_pre(code)
    dset = difference_set(code)
    budget = _Budget(budget_nodes, budget_seconds)
    reps = {}
    for f in dset:
        reps.setdefault(cycle_type(f), f)
    best = None
    try:
        for t, f in sorted(reps.items(), key=lambda kv: kv[0].lengths):
            w, sigma = min_weight_in_class(t, budget)
            if best is None or w < best[0]:
                best = (w, conjugator(f, sigma))
                if w == 1:
                    break
    except BudgetExceeded:
        if best is None:
            return SearchOutcome(None, None, False, budget.used)
        return SearchOutcome(best[0], best[1], False, budget.used)
    return SearchOutcome(best[0], best[1], True, budget.used)


# -- 2-DISTANCE via Hamiltonian paths ----------------------------------------------

def _constrained_path(n: int, constraint_sets: list, budget: _Budget):
    """A Hamiltonian path of K_n (0-indexed) containing no constraint set entirely.

    Vertices touching no constraint edge are interchangeable, so only the
    smallest unused one is tried at each step; once every constrained vertex
    is placed the remaining free vertices are appended in order.
    """
    by_edge: dict = {}
    for gi, edges in enumerate(constraint_sets):
        for e in edges:
            by_edge.setdefault(e, []).append(gi)
    constrained = sorted({v for edges in constraint_sets for e in edges for v in e})
    free = [v for v in range(n) if v not in set(constrained)]
    if not constraint_sets:
        return list(range(n))
    size = [len(edges) for edges in constraint_sets]
    count = [0] * len(constraint_sets)
    placed = [False] * n
    path = []
    n_constrained = len(constrained)

    def add_edge(u, v):
        e = (u, v) if u < v else (v, u)
        hit = by_edge.get(e, ())
        for gi in hit:
            count[gi] += 1
        if any(count[gi] == size[gi] for gi in hit):
            for gi in hit:
                count[gi] -= 1
            return None
        return hit

    def candidates(placed_constrained):
        for v in constrained:
            if not placed[v]:
                yield v
        for v in free:
            if not placed[v]:
                yield v
                break

    def rec(placed_constrained):
        budget.tick()
        if placed_constrained == n_constrained:
            return path + [v for v in free if not placed[v]]
        last = path[-1]
        for v in list(candidates(placed_constrained)):
            hit = add_edge(last, v)
            if hit is None:
                continue
            placed[v] = True
            path.append(v)
            found = rec(placed_constrained + (v not in free_set))
            if found is not None:
                return found
            path.pop()
            placed[v] = False
            for gi in hit:
                count[gi] -= 1
        return None

    free_set = set(free)
    for start in list(candidates(0)):
        placed[start] = True
        path.append(start)
        found = rec(0 + (start not in free_set))
        if found is not None:
            return found
        path.pop()
        placed[start] = False
    return None


def path_to_labeling(path: list) -> Permutation:
    """l(a_i) = i for the path a_1, ..., a_n (1-indexed vertices)."""
    img = [0] * len(path)
    for i, a in enumerate(path, 1):
        img[a - 1] = i
    return Permutation(img)


def labeling_to_path(l: Permutation) -> list:
    """The path l^-1(1), ..., l^-1(n)."""
    return list(inverse(l).images)


def two_distance(code: PermutationCode, budget_nodes: int | None = None,
                 budget_seconds: float | None = None) -> SearchOutcome:
    """Decide whether some relabeling reaches minimal distance >= 2.

    The witness is a Hamiltonian path (1-indexed) of K_n that contains no
    E(g) entirely, g ranging over the involutions of the difference set.
    A singleton code is vacuously a yes-instance.
    """
    n = code.n
    invs = sorted(involution_set(code))
    sets = [frozenset((u - 1, v - 1) for u, v in edge_set(g).edges) for g in invs]
    budget = _Budget(budget_nodes, budget_seconds)
    try:
        path = _constrained_path(n, sets, budget)
    except BudgetExceeded:
        return SearchOutcome(None, None, False, budget.used)
    if path is None:
        return SearchOutcome(False, None, True, budget.used)
    return SearchOutcome(True, [v + 1 for v in path], True, budget.used)


# -- Hamiltonian path reduction --------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 1..n; edges stored as (u, v), u < v."""

    n: int
    edges: frozenset

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v or not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"bad edge {u} {v}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def non_edges(self) -> list:
        return [(u, v) for u, v in itertools.combinations(range(1, self.n + 1), 2)
                if (u, v) not in self.edges]


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


def hamiltonian_to_code(graph: Graph) -> PermutationCode:
    """The code of non-edge transpositions plus the identity."""
    if graph.n < 2:
        raise ValueError("the reduction needs at least two vertices")
    elems = [Permutation.identity(graph.n)]
    elems.extend(transposition(u, v, graph.n) for u, v in graph.non_edges())
    return PermutationCode(graph.n, tuple(elems), False, "hamiltonian reduction")


def hamiltonian_path_exists(graph: Graph, budget_nodes: int | None = None) -> SearchOutcome:
    """Plain backtracking over simple paths."""
    n = graph.n
    adj = {v: sorted(u for u in range(1, n + 1) if graph.has_edge(u, v)) for v in range(1, n + 1)}
    budget = _Budget(budget_nodes)
    visited = [False] * (n + 1)
    path = []

    def rec():
        budget.tick()
        if len(path) == n:
            return True
        for u in adj[path[-1]]:
            if not visited[u]:
                visited[u] = True
                path.append(u)
                if rec():
                    return True
                path.pop()
                visited[u] = False
        return False

    try:
        for s in range(1, n + 1):
            visited[s] = True
            path.append(s)
            if rec():
                return SearchOutcome(True, list(path), True, budget.used)
            path.pop()
            visited[s] = False
    except BudgetExceeded:
        return SearchOutcome(None, None, False, budget.used)
    return SearchOutcome(False, None, True, budget.used)


def dumps_graph(graph: Graph) -> str:
    lines = [f"n {graph.n} m {len(graph.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(graph.edges))
    return "\n".join(lines) + "\n"


def loads_graph(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ValueError("empty graph file")
    head = rows[0]
    if len(head) != 4 or head[0] != "n" or head[2] != "m":
        raise ValueError("expected header 'n <vertices> m <edges>'")
    n, m = int(head[1]), int(head[3])
    edges = []
    for r in rows[1:]:
        if len(r) != 2:
            raise ValueError(f"bad edge line {' '.join(r)!r}")
        edges.append((int(r[0]), int(r[1])))
    if len(edges) != m:
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    norm = {(min(u, v), max(u, v)) for u, v in edges}
    if len(norm) != len(edges):
        raise ValueError("duplicate edge")
    return Graph(n, frozenset(norm))


# -- neighboring sets -------------------------------------------------------------------

def _mask(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        m |= 1 << (x - 1)
    return m


def _image_tables(perms: Iterable[Permutation]) -> list:
    return [tuple(1 << (x - 1) for x in f.images) for f in perms]


def _neighboring_elements(code: PermutationCode) -> list:
    if len(code) < 2:
        return []
    return [f for f in difference_set(code) if not f.is_identity()]


def _is_neighboring(tables: list, a_pts: list, b_pts: list, a_mask: int, b_mask: int) -> bool:
    for img in tables:
        hit = False
        for x in a_pts:
            if img[x - 1] & b_mask:
                hit = True
                break
        if not hit:
            for x in b_pts:
                if img[x - 1] & a_mask:
                    hit = True
                    break
        if not hit:
            return False
    return True


def neighboring_pair_check(code: PermutationCode, A: Iterable[int], B: Iterable[int]) -> bool:
    """True iff every non-identity difference sends a point of A into B or of B into A."""
    A, B = sorted(set(A)), sorted(set(B))
    if set(A) & set(B):
        raise ValueError("neighboring sets must be disjoint")
    for x in A + B:
        if not 1 <= x <= code.n:
            raise ValueError(f"point {x} outside 1..{code.n}")
    tables = _image_tables(_neighboring_elements(code))
    return _is_neighboring(tables, A, B, _mask(A), _mask(B))


def min_neighboring_order(code: PermutationCode, cap: int | None = None,
                          budget_nodes: int | None = None) -> SearchOutcome:
    """Smallest |A| + |B| over neighboring pairs, searching orders 2..cap.

    |A| <= |B| throughout; for |A| = |B| the smallest point of A u B is put
    in A.  The value is ``math.inf`` when the search covered every order up
    to n without success, and None when it stopped at ``cap`` first.
    """
    n = code.n
    limit = n if cap is None else min(cap, n)
    tables = _image_tables(_neighboring_elements(code))
    budget = _Budget(budget_nodes)
    try:
        for s in range(2, limit + 1):
            for union in itertools.combinations(range(1, n + 1), s):
                for a_size in range(1, s // 2 + 1):
                    for A in itertools.combinations(union, a_size):
                        if a_size * 2 == s and A[0] != union[0]:
                            continue
                        budget.tick()
                        B = [x for x in union if x not in A]
                        if _is_neighboring(tables, list(A), B, _mask(A), _mask(B)):
                            return SearchOutcome(s, NeighboringPair(A, B), True, budget.used)
    except BudgetExceeded:
        return SearchOutcome(None, None, False, budget.used)
    if limit >= n:
        return SearchOutcome(math.inf, None, True, budget.used)
    return SearchOutcome(None, None, False, budget.used)


def labeling_from_pair(code: PermutationCode, pair: NeighboringPair) -> LabelingCertificate:
    """Label A by 1..|A|, B by n-|B|+1..n and the rest in between."""
    if not neighboring_pair_check(code, pair.A, pair.B):
        raise ValueError("the sets are not neighboring for this code")
    n = code.n
    img = [0] * n
    for i, x in enumerate(sorted(pair.A), 1):
        img[x - 1] = i
    for i, x in enumerate(sorted(pair.B), n - len(pair.B) + 1):
        img[x - 1] = i
    rest = iter(range(len(pair.A) + 1, n - len(pair.B) + 1))
    for x in range(1, n + 1):
        if not img[x - 1]:
            img[x - 1] = next(rest)
    l = Permutation(img)
    return LabelingCertificate(l, min_distance(relabel(code, l)), "from_pair")

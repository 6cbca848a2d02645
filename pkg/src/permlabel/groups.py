"""Permutation codes and the group families used throughout the package.

AGL(p) acts naturally on GF(p) = {0..p-1}; here point ``x`` of GF(p) is
stored as ``x + 1`` so that every code lives on {1..n}.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .perm import (
    DegreeMismatchError,
    Permutation,
    compose,
    format_vector,
    is_single_cycle,
    parse_permutation,
)

DEFAULT_SIZE_CAP = 10**6


class CodeError(ValueError):
    """Invalid code construction or input."""


class CapExceededError(CodeError):
    def __init__(self, cap: int, partial_size: int):
        super().__init__(f"closure exceeded size cap {cap} (reached {partial_size} elements)")
        self.cap = cap
        self.partial_size = partial_size


@dataclass(frozen=True)
class PermutationCode:
    """A finite set of distinct permutations of equal degree.

    ``elements`` is kept sorted (lexicographic in vector notation) so that
    iteration order, and every choice derived from it, is deterministic.
    """

    n: int
    elements: tuple
    is_group: bool = False
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        elems = tuple(sorted(set(self.elements)))
        for e in elems:
            if e.n != self.n:
                raise DegreeMismatchError(f"element of degree {e.n} in a code of degree {self.n}")
        object.__setattr__(self, "elements", elems)

    @classmethod
    def from_elements(cls, elements: Iterable[Permutation], n: int | None = None,
                      is_group: bool | None = None, provenance: str = "") -> "PermutationCode":
        """Build a code; ``is_group=None`` detects group structure."""
        elems = list(elements)
        if n is None:
            if not elems:
                raise CodeError("cannot infer the degree of an empty code")
            n = elems[0].n
        code = cls(n, tuple(elems), False, provenance)
        if is_group is None:
            is_group = detect_group(code.elements)
        if is_group:
            code = cls(n, code.elements, True, provenance)
        return code

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.n)

    @property
    def contains_identity(self) -> bool:
        return self.identity in self._members

    @property
    def _members(self) -> frozenset:
        cached = self.__dict__.get("_member_set")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_member_set", cached)
        return cached

    def __contains__(self, f: Permutation) -> bool:
        return f in self._members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def closure(generators: Sequence[Permutation], size_cap: int = DEFAULT_SIZE_CAP,
            provenance: str = "") -> PermutationCode:
    """The subgroup generated by ``generators``, by breadth-first multiplication."""
    gens = list(generators)
    if not gens:
        raise CodeError("closure needs at least one generator")
    n = gens[0].n
    for g in gens:
        if g.n != n:
            raise DegreeMismatchError("generators have different degrees")
    elems = _bfs_closure(gens, size_cap)
    return PermutationCode(n, tuple(elems), True, provenance)


def _bfs_closure(gens: list, size_cap: int, within: frozenset | None = None):
    """Return the generated set, or None once an element leaves ``within``."""
    n = gens[0].n
    ident = Permutation.identity(n)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y in seen:
                continue
            if within is not None and y not in within:
                return None
            seen.add(y)
            if len(seen) > size_cap:
                raise CapExceededError(size_cap, len(seen))
            queue.append(y)
    return seen


def detect_group(elements: Sequence[Permutation]) -> bool:
    """True iff the finite set is a subgroup of S_n (contains the identity, closed).

    Picks generators greedily and closes them inside the set; each new
    generator at least doubles the subgroup, so the cost is O(|C| log |C|)
    compositions.
    """
    if not elements:
        return False
    members = frozenset(elements)
    if Permutation.identity(elements[0].n) not in members:
        return False
    gens: list = []
    sub = {Permutation.identity(elements[0].n)}
    for x in sorted(members):
        if x in sub:
            continue
        gens.append(x)
        grown = _bfs_closure(gens, len(members), within=members)
        if grown is None:
            return False
        sub = grown
        if len(sub) == len(members):
            return True
    return len(sub) == len(members)


def cyclic_group(generator: Permutation) -> PermutationCode:
    """All powers of a single n-cycle."""
    if not is_single_cycle(generator):
        raise CodeError("cyclic_group needs a single n-cycle generator")
    n = generator.n
    elems = [Permutation.identity(n)]
    for _ in range(n - 1):
        elems.append(compose(elems[-1], generator))
    return PermutationCode(n, tuple(elems), True, f"cyclic generator={format_vector(generator)}")


def dihedral(n: int) -> PermutationCode:
    """D_n generated by the rotation (1,...,n) and the reflection i -> n+1-i."""
    if n < 3:
        raise CodeError("dihedral group needs n >= 3")
    rot = Permutation.from_cycles([tuple(range(1, n + 1))], n)
    ref = Permutation(range(n, 0, -1))
    return closure([rot, ref], provenance=f"dihedral n={n}")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list:
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def primitive_root(p: int) -> int:
    """Smallest positive primitive element of GF(p)."""
    if not is_prime(p):
        raise CodeError(f"{p} is not prime")
    if p == 2:
        return 1
    factors = prime_factors(p - 1)
    for a in range(2, p):
        if all(pow(a, (p - 1) // q, p) != 1 for q in factors):
            return a
    raise AssertionError("unreachable: every prime field has a primitive element")


def affine_map(a: int, b: int, p: int) -> Permutation:
    """x -> a x + b over GF(p), on the shifted domain {1..p}."""
    return Permutation._trusted(tuple((a * x + b) % p + 1 for x in range(p)))


def agl(p: int) -> PermutationCode:
    """AGL(p) generated by x -> x+1 and x -> a x for the smallest primitive a."""
    if not is_prime(p) or p < 3:
        raise CodeError(f"agl needs a prime p >= 3, got {p}")
    a = primitive_root(p)
    return closure([affine_map(1, 1, p), affine_map(a, 0, p)], provenance=f"agl p={p} a={a}")


def is_transitive(code: PermutationCode) -> bool:
    """True iff the orbit of 1 under the code's elements is all of {1..n}."""
    orbit = {1}
    frontier = [1]
    while frontier:
        x = frontier.pop()
        for g in code.elements:
            y = g(x)
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return len(orbit) == code.n


# -- code file format ---------------------------------------------------------

def dumps_code(code: PermutationCode, comments: Sequence[str] = ()) -> str:
    lines = [f"n {code.n}"]
    notes = list(comments)
    if code.provenance:
        notes.insert(0, f"family: {code.provenance}")
    notes.append(f"size: {len(code)}")
    lines.extend(f"# {c}" for c in notes)
    lines.extend(format_vector(e) for e in code.elements)
    return "\n".join(lines) + "\n"


def loads_code(text: str) -> PermutationCode:
    n = None
    elems = []
    provenance = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("family:") and not provenance:
                provenance = body[len("family:"):].strip()
            continue
        if n is None:
            head = line.split()
            if len(head) != 2 or head[0] != "n":
                raise CodeError(f"line {lineno}: expected header 'n <degree>'")
            try:
                n = int(head[1])
            except ValueError:
                raise CodeError(f"line {lineno}: bad degree {head[1]!r}") from None
            if n < 1:
                raise CodeError(f"line {lineno}: degree must be positive")
            continue
        elems.append(parse_permutation(line, n))
    if n is None:
        raise CodeError("missing header 'n <degree>'")
    if not elems:
        raise CodeError("code file lists no permutations")
    if len(set(elems)) != len(elems):
        raise CodeError("code file lists a permutation twice")
    return PermutationCode.from_elements(elems, n, provenance=provenance)


def read_code(path) -> PermutationCode:
    with open(path, encoding="utf-8") as fh:
        return loads_code(fh.read())


def write_code(code: PermutationCode, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_code(code, comments))

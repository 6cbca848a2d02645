"""Permutations of {1..n}: algebra, cycle structure and the l-infinity metric.

Permutations are immutable and stored in vector notation, ``images[i - 1]``
being the image of ``i``.  The product ``f * g`` is the map ``i -> f(g(i))``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence


class PermutationError(ValueError):
    """Base class for invalid permutation input."""


class DegreeMismatchError(PermutationError):
    pass


class ParseError(PermutationError):
    pass


class MalformedPermutationError(ParseError):
    pass


class OutOfRangeError(ParseError):
    pass


class RepeatedValueError(ParseError):
    pass


class Permutation:
    """A bijection of {1..n} in vector notation."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Iterable[int]):
        img = tuple(int(x) for x in images)
        n = len(img)
        if n < 1:
            raise PermutationError("a permutation needs degree n >= 1")
        seen = [False] * (n + 1)
        for x in img:
            if not 1 <= x <= n:
                raise OutOfRangeError(f"value {x} outside 1..{n}")
            if seen[x]:
                raise RepeatedValueError(f"value {x} repeated")
            seen[x] = True
        self._img = img
        self._hash = hash(img)

    @classmethod
    def _trusted(cls, img: tuple) -> "Permutation":
        # caller guarantees img is a valid 1-indexed bijection
        obj = cls.__new__(cls)
        obj._img = img
        obj._hash = hash(img)
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        if n < 1:
            raise PermutationError("a permutation needs degree n >= 1")
        return cls._trusted(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from disjoint cycles; points not mentioned are fixed."""
        img = list(range(1, n + 1))
        used = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= n:
                    raise OutOfRangeError(f"value {x} outside 1..{n}")
                if x in used:
                    raise RepeatedValueError(f"value {x} repeated")
                used.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b
        return cls._trusted(tuple(img))

    @property
    def n(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple:
        return self._img

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self._img):
            raise OutOfRangeError(f"point {i} outside 1..{len(self._img)}")
        return self._img[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self._img == other._img

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def __le__(self, other: "Permutation") -> bool:
        return self._img <= other._img

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self._img)

    def __repr__(self) -> str:
        return f"Permutation([{', '.join(map(str, self._img))}])"

    def __str__(self) -> str:
        return format_vector(self)

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self._img, 1))

    def fixed_points(self) -> list:
        return [i for i, x in enumerate(self._img, 1) if x == i]

    def moved_points(self) -> list:
        return [i for i, x in enumerate(self._img, 1) if x != i]


@dataclass(frozen=True)
class CycleType:
    """Cycle lengths in non-increasing order, fixed points included."""

    lengths: tuple

    def __post_init__(self):
        if any(x < 1 for x in self.lengths):
            raise ValueError("cycle lengths must be positive")
        object.__setattr__(self, "lengths", tuple(sorted(self.lengths, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.lengths)

    @property
    def cycle_count(self) -> int:
        return len(self.lengths)

    def multiplicities(self) -> dict:
        """Map cycle length -> number of cycles of that length."""
        return dict(Counter(self.lengths))


def _check_degree(f: Permutation, g: Permutation) -> None:
    if f.n != g.n:
        raise DegreeMismatchError(f"degrees differ: {f.n} != {g.n}")


def compose(f: Permutation, g: Permutation) -> Permutation:
    """The product fg, mapping i to f(g(i))."""
    _check_degree(f, g)
    fi = f._img
    return Permutation._trusted(tuple(fi[x - 1] for x in g._img))


def inverse(f: Permutation) -> Permutation:
    inv = [0] * f.n
    for i, x in enumerate(f._img, 1):
        inv[x - 1] = i
    return Permutation._trusted(tuple(inv))


def conjugate(l: Permutation, f: Permutation) -> Permutation:
    """Return l f l^-1: every cycle of f with its entries renamed by l."""
    _check_degree(l, f)
    li = l._img
    img = [0] * f.n
    for x, fx in enumerate(f._img, 1):
        img[li[x - 1] - 1] = li[fx - 1]
    return Permutation._trusted(tuple(img))


def power(f: Permutation, k: int) -> Permutation:
    if k < 0:
        f, k = inverse(f), -k
    result = Permutation.identity(f.n)
    base = f
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def linf_distance(f: Permutation, g: Permutation) -> int:
    """max_i |f(i) - g(i)|."""
    _check_degree(f, g)
    return max(abs(a - b) for a, b in zip(f._img, g._img))


def weight(f: Permutation) -> int:
    """Distance from the identity."""
    return max(abs(x - i) for i, x in enumerate(f._img, 1))


def cycles(f: Permutation) -> list:
    """Disjoint cycles, each starting at its smallest point, fixed points included."""
    n = f.n
    seen = [False] * (n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = f._img[x - 1]
        out.append(tuple(cyc))
    return out


def cycle_type(f: Permutation) -> CycleType:
    return CycleType(tuple(len(c) for c in cycles(f)))


def cycle_decomposition(f: Permutation) -> tuple:
    """Return ``(cycles, cycle_type)``."""
    cs = cycles(f)
    return cs, CycleType(tuple(len(c) for c in cs))


def cycle_count(f: Permutation) -> int:
    return len(cycles(f))


def is_involution(f: Permutation) -> bool:
    """True iff f has order exactly 2."""
    img = f._img
    nontrivial = False
    for i, x in enumerate(img, 1):
        if img[x - 1] != i:
            return False
        if x != i:
            nontrivial = True
    return nontrivial


def is_single_cycle(f: Permutation) -> bool:
    """True iff f is one n-cycle (an n-cycle in S_1 is the identity)."""
    return len(cycles(f)) == 1


def reversal(n: int) -> Permutation:
    """The map i -> n + 1 - i."""
    return Permutation._trusted(tuple(range(n, 0, -1)))


def transposition(u: int, v: int, n: int) -> Permutation:
    if u == v:
        raise PermutationError("a transposition needs two distinct points")
    return Permutation.from_cycles([(u, v)], n)


def conjugator(f: Permutation, g: Permutation) -> Permutation:
    """Some l with l f l^-1 = g; f and g must share a cycle type.

    Cycles are matched greedily by length in the order ``cycles()`` lists them.
    """
    _check_degree(f, g)
    if cycle_type(f) != cycle_type(g):
        raise PermutationError("permutations are not conjugate")
    pool: dict = {}
    for c in cycles(g):
        pool.setdefault(len(c), []).append(c)
    for v in pool.values():
        v.reverse()
    img = [0] * f.n
    for c in cycles(f):
        target = pool[len(c)].pop()
        for a, b in zip(c, target):
            img[a - 1] = b
    return Permutation._trusted(tuple(img))


# -- text format ----------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_vector(f: Permutation, offset: int = 0) -> str:
    return " ".join(str(x + offset) for x in f._img)


def format_cycles(f: Permutation, offset: int = 0, fixed: bool = False) -> str:
    """Cycle notation; fixed points are omitted unless ``fixed`` is set."""
    parts = []
    for c in cycles(f):
        if len(c) == 1 and not fixed:
            continue
        parts.append("(" + " ".join(str(x + offset) for x in c) + ")")
    return "".join(parts) if parts else "()"


def format_permutation(f: Permutation, notation: str = "vector", offset: int = 0) -> str:
    if notation == "vector":
        return format_vector(f, offset)
    if notation == "cycle":
        return format_cycles(f, offset)
    raise ValueError(f"unknown notation {notation!r}")


def _ints(tokens: Sequence[str], text: str) -> list:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise MalformedPermutationError(f"non-integer token in {text!r}") from None


def parse_permutation(text: str, n: int | None = None, offset: int = 0) -> Permutation:
    """Parse vector notation ("2 3 1") or cycle notation ("(1 2 3)(4)").

    Commas may separate entries.  ``offset`` is added to every value, so
    ``offset=1`` reads 0-indexed text.  Cycle notation needs ``n`` unless the
    largest mentioned point is the degree.
    """
    s = text.strip()
    if not s:
        raise MalformedPermutationError("empty permutation text")
    if "(" in s or ")" in s:
        rest = _CYCLE_RE.sub(" ", s)
        if rest.replace(",", " ").strip():
            raise MalformedPermutationError(f"unexpected text outside cycles in {text!r}")
        if s.count("(") != s.count(")") or s.count("(") != len(_CYCLE_RE.findall(s)):
            raise MalformedPermutationError(f"unbalanced parentheses in {text!r}")
        cyc = []
        for body in _CYCLE_RE.findall(s):
            vals = _ints(body.replace(",", " ").split(), text)
            cyc.append([v + offset for v in vals])
        top = max((x for c in cyc for x in c), default=0)
        deg = n if n is not None else top
        if deg < 1:
            raise MalformedPermutationError(f"cannot infer degree of {text!r}")
        return Permutation.from_cycles([c for c in cyc if c], deg)
    vals = [v + offset for v in _ints(s.replace(",", " ").split(), text)]
    if n is not None and len(vals) != n:
        raise MalformedPermutationError(f"expected {n} entries, got {len(vals)}")
    return Permutation(vals)

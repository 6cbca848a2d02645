"""Closed-form and probabilistic bounds on the best relabeled distance.

Floating-point left-hand sides count as satisfied only below ``1 - MARGIN``.
Integer formulas (the cyclic k, binomial comparisons) are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

import numpy as np

from .analysis import cycle_count_histogram, difference_set
from .groups import CodeError, PermutationCode, is_prime, prime_factors
from .labeling import cyclic_k
from .perm import Permutation, cycles

MARGIN = 1e-9

# pi to 20 decimals, as a rational enclosure
PI_LO = Fraction(314159265358979323846, 10**20)
PI_HI = Fraction(314159265358979323847, 10**20)

BOUND_KINDS = ("prob_general", "min_degree", "cyclic_formula", "neighboring_lower",
               "agl_asymptotic", "dihedral_asymptotic")


@dataclass
class BoundReport:
    kind: str
    guaranteed_distance: int | None
    parameters: dict = field(default_factory=dict)
    lhs_value: float | None = None
    valid: bool = False
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "guaranteed_distance": self.guaranteed_distance,
            "parameters": self.parameters,
            "lhs_value": self.lhs_value,
            "valid": self.valid,
            "reason": self.reason,
        }


def guaranteed(n: int, p: float, t: float) -> int:
    """n + 1 - floor(2 p n + t)."""
    return n + 1 - math.floor(2 * p * n + t)


def _check_pt(p: float, t: float) -> None:
    if not 0 < p < 0.5:
        raise ValueError(f"p must lie in (0, 1/2), got {p}")
    if not t > 0:
        raise ValueError(f"t must be positive, got {t}")


# -- probabilistic labeling bound ---------------------------------------------------

def histogram_of(source) -> dict:
    """Cycle-count histogram from a histogram mapping or an iterable of permutations."""
    if isinstance(source, Mapping):
        return {int(c): int(m) for c, m in source.items()}
    return cycle_count_histogram(source)


def prob_bound_lhs(source, n: int, p: float, t: float) -> float:
    """e^{-2t^2/n} + sum_f e^{-(n - c(f)) p^2/(1-p)} over the difference set."""
    _check_pt(p, t)
    hist = histogram_of(source)
    q = p * p / (1 - p)
    total = math.exp(-2 * t * t / n)
    for c, m in hist.items():
        total += math.exp(math.log(m) - (n - c) * q)
    return total


def _tail_sums(hist: dict, n: int, ps: np.ndarray) -> np.ndarray:
    """Vectorized second term of the inequality, in log space."""
    if not hist:
        return np.zeros_like(ps)
    cs = np.array(list(hist), dtype=float)
    logm = np.log(np.array(list(hist.values()), dtype=float))
    q = ps * ps / (1 - ps)
    expo = logm[None, :] - (n - cs)[None, :] * q[:, None]
    top = expo.max(axis=1)
    return np.exp(top) * np.exp(expo - top[:, None]).sum(axis=1)


def _grid_best(hist, n, ps, ts):
    tail = _tail_sums(hist, n, ps)
    lhs = np.exp(-2 * ts * ts / n)[None, :] + tail[:, None]
    ok = lhs < 1 - MARGIN
    if not ok.any():
        return None
    dist = n + 1 - np.floor(2 * ps[:, None] * n + ts[None, :])
    score = np.where(ok, dist, -np.inf)
    # row-major argmax: smallest p, then smallest t, among the maxima
    i, j = np.unravel_index(int(np.argmax(score)), score.shape)
    return int(score[i, j]), i, j


def prob_bound_optimize(source, n: int, steps: int = 400) -> BoundReport:
    """Best guaranteed distance over a (p, t) grid, then one refinement pass."""
    hist = histogram_of(source)
    ps = np.linspace(0.0, 0.5, steps + 2)[1:-1]
    ts = np.linspace(0.0, float(n), steps + 1)[1:]
    coarse = _grid_best(hist, n, ps, ts)
    if coarse is None:
        return BoundReport("prob_general", None, {"n": n, "steps": steps}, None, False,
                           "no grid point satisfies the inequality")
    d, i, j = coarse
    best = (d, float(ps[i]), float(ts[j]))
    p_lo, p_hi = float(ps[max(i - 1, 0)]), float(ps[min(i + 1, len(ps) - 1)])
    t_lo, t_hi = float(ts[max(j - 1, 0)]), float(ts[min(j + 1, len(ts) - 1)])
    fine_ps = np.linspace(p_lo, p_hi, steps)
    fine_ps = fine_ps[(fine_ps > 0) & (fine_ps < 0.5)]
    fine_ts = np.linspace(t_lo, t_hi, steps)
    fine_ts = fine_ts[fine_ts > 0]
    fine = _grid_best(hist, n, fine_ps, fine_ts)
    if fine is not None:
        fd, fi, fj = fine
        cand = (fd, float(fine_ps[fi]), float(fine_ts[fj]))
        if (cand[0], -cand[1], -cand[2]) > (best[0], -best[1], -best[2]):
            best = cand
    _, p, t = best
    lhs = prob_bound_lhs(hist, n, p, t)
    return BoundReport("prob_general", guaranteed(n, p, t), {"n": n, "p": p, "t": t, "steps": steps},
                       lhs, lhs < 1 - MARGIN, "grid optimum")


def prob_bound_report(source, n: int, p: float, t: float) -> BoundReport:
    lhs = prob_bound_lhs(source, n, p, t)
    ok = lhs < 1 - MARGIN
    return BoundReport("prob_general", guaranteed(n, p, t), {"n": n, "p": p, "t": t}, lhs, ok,
                       "inequality holds" if ok else "inequality fails")


def min_degree_bound(code_size: int, min_deg: int, n: int, p: float, t: float) -> BoundReport:
    """e^{-2t^2/n} + |C| e^{-d p^2 / (2(1-p))} < 1, d the minimal degree."""
    _check_pt(p, t)
    lhs = math.exp(-2 * t * t / n) + math.exp(math.log(code_size) - min_deg * p * p / (2 * (1 - p)))
    ok = lhs < 1 - MARGIN
    params = {"code_size": code_size, "min_degree": min_deg, "n": n, "p": p, "t": t}
    return BoundReport("min_degree", guaranteed(n, p, t), params, lhs, ok,
                       "inequality holds" if ok else "inequality fails")


def agl_asymptotic_params(q: int) -> BoundReport:
    """The minimal-degree bound for AGL(q) at t = sqrt(q ln(q+1)), p = sqrt(4 ln(q+1)/(q-1))."""
    if not is_prime(q) or q < 3:
        raise CodeError(f"agl_asymptotic_params needs a prime q >= 3, got {q}")
    L = math.log(q + 1)
    t = math.sqrt(q * L)
    p = math.sqrt(4 * L / (q - 1))
    params = {
        "q": q,
        "p": p,
        "t": t,
        "form_value": math.exp(-2 * t * t / q) + q * q * math.exp(-(q - 1) * p * p / 2),
        "form_closed": 1 / (q + 1) ** 2 + q * q / (q + 1) ** 2,
        "chain_lower_bound": q - 2 * q * p - t,
    }
    if p >= 0.5:
        return BoundReport("agl_asymptotic", guaranteed(q, p, t), params, None, False,
                           f"p = {p:.6g} >= 1/2: asymptotic regime not reached")
    inner = min_degree_bound(q * (q - 1), q - 1, q, p, t)
    return BoundReport("agl_asymptotic", inner.guaranteed_distance, params, inner.lhs_value,
                       inner.valid, inner.reason)


def dihedral_asymptotic_params(n: int) -> BoundReport:
    """The minimal-degree bound for D_n at t = sqrt(n ln(2n+2)/2), p = sqrt(ln(2n+2)/(n/2-1))."""
    if n < 37:
        return BoundReport("dihedral_asymptotic", None, {"n": n}, None, False,
                           "needs n >= 37")
    L = math.log(2 * n + 2)
    t = math.sqrt(n * L / 2)
    p = math.sqrt(L / (n / 2 - 1))
    params = {
        "n": n,
        "p": p,
        "t": t,
        "form_value": math.exp(-2 * t * t / n) + 2 * n * math.exp(-(n - 2) * p * p / 2),
        "form_closed": 1 / (2 * n + 2) + 2 * n / (2 * n + 2),
        "chain_lower_bound": n - 2 * n * p - t,
    }
    if p >= 0.5:
        return BoundReport("dihedral_asymptotic", guaranteed(n, p, t), params, None, False,
                           f"p = {p:.6g} >= 1/2")
    inner = min_degree_bound(2 * n, n - 2, n, p, t)
    return BoundReport("dihedral_asymptotic", inner.guaranteed_distance, params, inner.lhs_value,
                       inner.valid, inner.reason)


# -- closed-form integers ---------------------------------------------------------------

def cyclic_lmax_formula(n: int) -> int:
    """n - ceil((sqrt(4n-3) - 1)/2), exact."""
    if n < 2:
        raise ValueError("the cyclic formula needs n >= 2")
    return n - cyclic_k(n)


def neighboring_lower_bound_agl(p: int) -> float:
    """max{sqrt(2(p-1)), 6}; ``math.inf`` for p in {3, 5}, which have no neighboring pair."""
    if not is_prime(p) or p < 3:
        raise CodeError(f"needs a prime p >= 3, got {p}")
    if p in (3, 5):
        return math.inf
    return max(math.sqrt(2 * (p - 1)), 6.0)


def neighboring_lower_report(n: int, order: float) -> BoundReport:
    """Lower bound n - O + 1 from a neighboring pair of order O."""
    if math.isinf(order):
        return BoundReport("neighboring_lower", None, {"n": n, "order": None}, None, False,
                           "no neighboring pair")
    return BoundReport("neighboring_lower", n - int(order) + 1, {"n": n, "order": int(order)},
                       None, True, "ok")


# -- cycle-index polynomials ----------------------------------------------------------------

@dataclass(frozen=True)
class CycleIndexPolynomial:
    """Integer polynomial; ``coefficients[s]`` is the coefficient of x^s."""

    coefficients: tuple

    def __post_init__(self):
        c = list(int(x) for x in self.coefficients)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coefficients", tuple(c) if c else (0,))

    @classmethod
    def one(cls) -> "CycleIndexPolynomial":
        return cls((1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, s: int) -> int:
        return self.coefficients[s] if 0 <= s < len(self.coefficients) else 0

    def __add__(self, other: "CycleIndexPolynomial") -> "CycleIndexPolynomial":
        a, b = self.coefficients, other.coefficients
        m = max(len(a), len(b))
        return CycleIndexPolynomial(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                                          for i in range(m)))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycleIndexPolynomial(tuple(other * x for x in self.coefficients))
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return CycleIndexPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycleIndexPolynomial":
        result = CycleIndexPolynomial.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _one_plus_x_pow(i: int) -> CycleIndexPolynomial:
    return CycleIndexPolynomial((1,) + (0,) * (i - 1) + (1,))


def cycle_index_poly(f: Permutation) -> CycleIndexPolynomial:
    """prod over cycles of (1 + x^len): x^s counts f-invariant s-subsets."""
    poly = CycleIndexPolynomial.one()
    for c in cycles(f):
        poly = poly * _one_plus_x_pow(len(c))
    return poly


def totient(m: int) -> int:
    result = m
    for q in prime_factors(m):
        result -= result // q
    return result


def divisors(m: int) -> list:
    return [d for d in range(1, m + 1) if m % d == 0]


def agl_cycle_index(p: int) -> CycleIndexPolynomial:
    """Sum of Z_f over AGL(p) minus the identity, in closed form.

    (p-1)(1 + x^p) + sum_{i | p-1, i > 1} p phi(i) (1 + x)(1 + x^i)^{(p-1)/i}
    """
    if not is_prime(p) or p < 3:
        raise CodeError(f"agl_cycle_index needs a prime p >= 3, got {p}")
    poly = (p - 1) * _one_plus_x_pow(p)
    for i in divisors(p - 1):
        if i > 1:
            poly = poly + (p * totient(i)) * (_one_plus_x_pow(1) * _one_plus_x_pow(i) ** ((p - 1) // i))
    return poly


def agl_cycle_count_histogram(p: int) -> dict:
    """Cycle-count histogram of AGL(p) minus the identity, without enumerating it.

    x -> x + b (b != 0) is a p-cycle; x -> a x + b with a != 1 fixes one point
    and splits the rest into cycles of length ord(a).
    """
    if not is_prime(p) or p < 3:
        raise CodeError(f"needs a prime p >= 3, got {p}")
    hist = {1: p - 1}
    for a in range(2, p):
        order = 1
        x = a
        while x != 1:
            x = x * a % p
            order += 1
        c = 1 + (p - 1) // order
        hist[c] = hist.get(c, 0) + p
    return dict(sorted(hist.items()))


def _gt_over_sqrt_pi(x: int, y: int, p: int):
    """Decide x > y / sqrt(pi (p-1)/4) exactly; None if the pi enclosure cannot tell."""
    # x > y / sqrt(pi (p-1)/4)  <=>  x^2 pi (p-1) > 4 y^2
    lo = Fraction(x * x * (p - 1)) * PI_LO
    hi = Fraction(x * x * (p - 1)) * PI_HI
    rhs = 4 * y * y
    if lo > rhs:
        return True
    if hi <= rhs:
        return False
    return None


def _le_over_sqrt_pi(x: int, y: int, p: int):
    gt = _gt_over_sqrt_pi(x, y, p)
    return None if gt is None else not gt


@dataclass
class CountingReport:
    p: int
    coefficient: int
    printed_sum: int
    central_binomial: int
    analytic_bound: float
    coefficient_within_bound: bool | None
    binomial_exceeds_bound: bool | None

    @property
    def chain_holds(self) -> bool:
        return bool(self.coefficient_within_bound and self.binomial_exceeds_bound)

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "coefficient": self.coefficient,
            "printed_sum": self.printed_sum,
            "central_binomial": self.central_binomial,
            "analytic_bound": self.analytic_bound,
            "coefficient_within_bound": self.coefficient_within_bound,
            "binomial_exceeds_bound": self.binomial_exceeds_bound,
            "chain_holds": self.chain_holds,
        }


def theorem8_counting_check(p: int) -> CountingReport:
    """Compare the count of invariant (p-1)/2-subsets with the number of all such subsets.

    ``coefficient`` is read off the closed-form AGL cycle index; ``printed_sum``
    is sum_{2i | p-1, i > 1} p phi(i) C((p-1)/i, (p-1)/(2i)), which leaves out
    subsets containing the fixed point and so undercounts when p = 3 mod 4.
    The analytic bound is p^3 2^{(p-1)/2} / sqrt(pi (p-1)/4).
    """
    if not is_prime(p) or p < 3:
        raise CodeError(f"needs a prime p >= 3, got {p}")
    m = (p - 1) // 2
    coeff = agl_cycle_index(p).coefficient(m)
    printed_sum = sum(p * totient(i) * comb((p - 1) // i, (p - 1) // (2 * i))
                      for i in divisors(p - 1) if i > 1 and (p - 1) % (2 * i) == 0)
    central = comb(p, m)
    y = p ** 3 * 2 ** m
    bound = y / math.sqrt(math.pi * (p - 1) / 4)
    return CountingReport(p, coeff, printed_sum, central, bound,
                          _le_over_sqrt_pi(coeff, y, p), _gt_over_sqrt_pi(central, y, p))


def code_histogram(code: PermutationCode) -> dict:
    return cycle_count_histogram(difference_set(code))

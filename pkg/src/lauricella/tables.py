"""Normalizing constant of 2 x (m+1) contingency tables with fixed margins.

    Z(beta, gamma; p) = t! * sum_u p^u / u!

over nonnegative integer tables u with row sums beta and column sums gamma.
:func:`z_bruteforce` enumerates the tables; :func:`z_hgm` reaches the same
number through a contiguity walk in the parameters of F_D or f^(k).
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import XPoint
from .contiguity import (F_VARIANT, FK_VARIANT, integer_params, plan, seed_vector_b0,
                         seed_vector_bk, walk)
from .errors import DomainError
from .scalar import is_exact

DEFAULT_BRUTE_BOUND = 30


@dataclass(frozen=True)
class Marginals:
    beta: tuple
    gamma: tuple

    def __post_init__(self):
        object.__setattr__(self, "beta", tuple(int(v) for v in self.beta))
        object.__setattr__(self, "gamma", tuple(int(v) for v in self.gamma))
        if len(self.beta) != 2:
            raise DomainError("beta must have two entries", location="Marginals")
        if len(self.gamma) < 2:
            raise DomainError("gamma needs at least two columns (m >= 1)", location="Marginals")
        if any(v <= 0 for v in self.beta + self.gamma):
            raise DomainError("all marginals must be positive", location="Marginals",
                              detail="drop zero columns first (drop_zero_columns)")
        if sum(self.beta) != sum(self.gamma):
            raise DomainError(f"row sums {self.beta} and column sums {self.gamma} disagree",
                              location="Marginals")

    @property
    def m(self):
        return len(self.gamma) - 1

    @property
    def t(self):
        return sum(self.beta)


def drop_zero_columns(beta, gamma, p):
    """Remove columns with gamma_j = 0 (they contribute a factor 1 to Z)."""
    keep = [j for j, g in enumerate(gamma) if g != 0]
    return tuple(beta), tuple(gamma[j] for j in keep), [[row[j] for j in keep] for row in p]


def classify(mg):
    """The unique k with (beta, gamma) in B_k."""
    b1 = mg.beta[0]
    partial = 0
    for k, g in enumerate(mg.gamma):
        partial += g
        if b1 - partial <= 0:
            return k
    raise AssertionError("unreachable: beta_1 <= t")


def u_table(mg, k):
    """The table u_0 (k = 0) or u_k; u_0 may have a negative entry."""
    b1, g = mg.beta[0], mg.gamma
    m = mg.m
    if k == 0:
        return [[b1] + [0] * m, [g[0] - b1] + list(g[1:])]
    head = sum(g[:k])
    top = list(g[:k]) + [b1 - head] + [0] * (m - k)
    bottom = [0] * k + [head + g[k] - b1] + list(g[k + 1:])
    return [top, bottom]


def _check_p(p, m):
    if len(p) != 2 or any(len(row) != m + 1 for row in p):
        raise DomainError(f"p must be 2 x {m + 1}", location="p")
    if any(v <= 0 for row in p for v in row):
        raise DomainError("p entries must be positive", location="p")


def x_from_p(p):
    """x_i = p_{1i} p_{20} / (p_{10} p_{2i}), i = 1..m."""
    m = len(p[0]) - 1
    _check_p(p, m)
    if all(is_exact(v) for row in p for v in row):
        p = _exact_p(p)
    xs = [p[0][i] * p[1][0] / (p[0][0] * p[1][i]) for i in range(1, m + 1)]
    try:
        return XPoint(tuple(xs))
    except DomainError as exc:
        raise DomainError(str(exc), location="x_from_p",
                          detail="two columns of p are proportional; perturb p slightly") from exc


def monomial(p, u):
    out = 1
    for prow, urow in zip(p, u):
        for pij, uij in zip(prow, urow):
            out = out * pij ** uij
    return out


def factorial_product(u):
    out = 1
    for row in u:
        for v in row:
            out *= math.factorial(v)
    return out


def tables(mg):
    """All tables with the given margins, in column-major lexicographic order."""
    g, b1 = mg.gamma, mg.beta[0]
    m = mg.m
    suffix = [sum(g[j + 1:]) for j in range(m + 1)]

    def rec(j, used, row):
        if j == m + 1:
            yield [row, [gj - r for gj, r in zip(g, row)]]
            return
        lo = max(0, b1 - used - suffix[j])
        hi = min(g[j], b1 - used)
        for v in range(lo, hi + 1):
            yield from rec(j + 1, used + v, row + [v])

    yield from rec(0, 0, [])


def z_bruteforce(mg, p, bound=DEFAULT_BRUTE_BOUND):
    if mg.t > bound:
        raise DomainError(f"t = {mg.t} exceeds the enumeration bound {bound}",
                          location="z_bruteforce")
    _check_p(p, mg.m)
    if all(is_exact(v) for row in p for v in row):
        p = _exact_p(p)
    total = 0
    for u in tables(mg):
        total = total + monomial(p, u) / factorial_product(u)
    return math.factorial(mg.t) * total


def _exact_p(p):
    return [[Fraction(v) for v in row] for row in p]


def z_hgm(mg, p, report=None):
    """Z through the contiguity walk; exact for rational p.

    Class 0 uses F_D(-beta_1, -gamma_{1..m}, gamma_0 - beta_1 + 1; x); class
    k uses f^(k) at the same parameters, with the monomial prefactor p^{u_0}.
    """
    _check_p(p, mg.m)
    if all(is_exact(v) for row in p for v in row):
        p = _exact_p(p)
    x = x_from_p(p)
    k = classify(mg)
    b1, g = mg.beta[0], mg.gamma
    path = plan(b1, g, k)
    u0 = u_table(mg, 0)
    if k == 0:
        seed = seed_vector_b0(path.start, x.coords)
        vec = walk(path, seed, x, F_VARIANT, report=report, integer=True)
        pref = Fraction(math.factorial(mg.t)) / factorial_product(u0)
    else:
        seed = seed_vector_bk(g, k, x.coords)
        vec = walk(path, seed, x, FK_VARIANT, report=report, integer=True)
        pref = Fraction(math.factorial(mg.t))
    assert path.target == integer_params(b1, g)
    z = pref * monomial(p, u0) * vec[0]
    if isinstance(z, complex) and all(isinstance(v, (int, float)) for row in p for v in row):
        z = z.real  # Z is a polynomial in p with positive coefficients
    return z

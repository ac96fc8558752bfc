"""Series evaluation of F_D, the Laurent solutions f^(k) and their gradients.

Exact inputs give exact results through :class:`LaurentPoly`; complex inputs
are summed with numpy over the truncation box 0..N in every index.

When the parameters are rational but not integral, 1/Gamma of the base
arguments is irrational.  In exact mode each such factor is then replaced by
Gamma(base)/Gamma(base + shift), which multiplies the whole f^(k) series by a
constant.  The result is still a solution of the same system, which is what
the symbolic checks need; ``SeriesPoly.normalized`` records when this
happened.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import DomainError, PoleError
from .scalar import (EXACT, FLOAT, Params, cpow, integer_value, is_exact, mode_of, pochhammer,
                     rgamma, rgamma_int)

DEFAULT_ORDER = 40
DEFAULT_RHO = 0.5


@dataclass(frozen=True)
class Truncation:
    """Box truncation: every summation index runs over 0..order."""

    order: int = DEFAULT_ORDER
    rho: float = DEFAULT_RHO

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("truncation order must be >= 0")
        if not 0 < self.rho < 1:
            raise DomainError("tail ratio bound rho must lie in (0, 1)")


@dataclass
class SeriesValue:
    value: object
    tail_estimate: float = 0.0
    finite: bool = False
    poly: "LaurentPoly" = None


class LaurentPoly:
    """Finite sum  sum_v coeff[v] * x^(shift + v)  over integer vectors v.

    ``shift`` carries a common exponent offset so that the multivalued
    prefactor of f^(k) can be represented exactly even when its exponents are
    not integers.
    """

    def __init__(self, coeffs, shift):
        self.shift = tuple(shift)
        self.coeffs = {tuple(v): c for v, c in coeffs.items() if c != 0}

    @property
    def m(self):
        return len(self.shift)

    def __repr__(self):
        return f"LaurentPoly({len(self.coeffs)} terms, shift={self.shift})"

    def __eq__(self, other):
        return self.shift == other.shift and self.coeffs == other.coeffs

    def _same_shift(self, other):
        if self.shift != other.shift:
            raise ValueError("cannot combine Laurent polynomials with different shifts")

    def __add__(self, other):
        self._same_shift(other)
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, 0) + c
        return LaurentPoly(out, self.shift)

    def __neg__(self):
        return LaurentPoly({v: -c for v, c in self.coeffs.items()}, self.shift)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return LaurentPoly({v: s * c for v, c in self.coeffs.items()}, self.shift)

    def theta(self, i):
        """Euler operator x_i d/dx_i (0-based index)."""
        return LaurentPoly({v: (self.shift[i] + v[i]) * c for v, c in self.coeffs.items()},
                           self.shift)

    def theta_total(self):
        out = LaurentPoly({}, self.shift)
        for i in range(self.m):
            out = out + self.theta(i)
        return out

    def mul_x(self, i, power=1):
        out = {}
        for v, c in self.coeffs.items():
            w = list(v)
            w[i] += power
            out[tuple(w)] = c
        return LaurentPoly(out, self.shift)

    def diff(self, i):
        return self.theta(i).mul_x(i, -1)

    def is_zero(self):
        return not self.coeffs

    def evaluate(self, x):
        x = tuple(x)
        total = 0
        for v, c in self.coeffs.items():
            term = c
            for xi, s, vi in zip(x, self.shift, v):
                term = term * cpow(xi, s + vi)
            total = total + term
        return total

    def gradient(self, x):
        return [self.diff(i).evaluate(x) for i in range(self.m)]


@dataclass
class SeriesPoly:
    """A truncated series together with the data needed to judge truncation."""

    poly: LaurentPoly
    k: int
    caps: tuple
    forced: tuple
    normalized: bool = False

    @property
    def finite(self):
        return all(self.forced)

    def index_of(self, v):
        """Summation index n of the monomial x^(shift + v)."""
        m, k = len(v), self.k
        if k == 0:
            return tuple(v)
        n = [0] * m
        for l in range(m):
            if l < k - 1:
                n[l] = -v[l]
            elif l > k - 1:
                n[l] = v[l]
        n[k - 1] = v[k - 1] - sum(n[: k - 1]) + sum(n[k:])
        return tuple(n)

    def truncated_away(self, v):
        """True if the full series has a term at v that the box dropped."""
        n = self.index_of(v)
        if any(nl < 0 for nl in n):
            return False
        return any(nl > cap and not f for nl, cap, f in zip(n, self.caps, self.forced))


def _coords(x):
    return tuple(x.coords) if hasattr(x, "coords") else tuple(x)


def _mode(p, x):
    return EXACT if mode_of(p.a, p.b, p.c, x) == EXACT else FLOAT


def _rgamma_table(z, s_lo, s_hi, mode):
    """1/Gamma(z + s) for s = s_lo..s_hi as a dict.

    Returns (table, normalized).  In exact mode with non-integer z the
    values are Gamma(z)/Gamma(z + s).
    """
    n = integer_value(z)
    if n is not None:
        conv = Fraction if mode == EXACT else complex
        return {s: conv(rgamma_int(n + s)) for s in range(s_lo, s_hi + 1)}, False
    if mode == EXACT:
        start, normalized = Fraction(1), True
    else:
        z = complex(z)
        start, normalized = rgamma(z), False
    table = {0: start}
    for s in range(0, s_hi):
        table[s + 1] = table[s] / (z + s)
    for s in range(0, s_lo, -1):
        table[s - 1] = table[s] * (z + s - 1)
    return {s: table[s] for s in range(s_lo, s_hi + 1)}, normalized


def _inv_fact(n, mode):
    return Fraction(1, math.factorial(n)) if mode == EXACT else 1.0 / math.factorial(n)


# -- F_D -------------------------------------------------------------------

def _fd_setup(p, t, mode):
    m, N = p.m, t.order
    caps, forced = [N] * m, [False] * m
    na = integer_value(p.a)
    for l, bl in enumerate(p.b):
        nb = integer_value(bl)
        if nb is not None and nb <= 0:
            caps[l], forced[l] = -nb, True
    if na is not None and na <= 0:
        for l in range(m):
            if not forced[l] or caps[l] > -na:
                caps[l] = -na
            forced[l] = True
    if mode == FLOAT:
        forced = [f and c <= N for c, f in zip(caps, forced)]
        caps = [c if f else N for c, f in zip(caps, forced)]
    smax = sum(caps)
    ratio = [pochhammer(p.a, 0) * 0 + 1]
    for s in range(smax):
        prev = ratio[-1]
        if prev == 0:
            ratio.append(prev)
            continue
        num = p.a + s
        den = p.c + s
        if num == 0:
            ratio.append(prev * 0)
            continue
        if integer_value(den) == 0:
            raise PoleError(f"(c, n) vanishes at n = {s + 1} with c = {p.c}", location="fd_series")
        ratio.append(prev * num / den)
    per_index = []
    for l in range(m):
        col = [pochhammer(p.b[l], 0)]
        for n in range(caps[l]):
            col.append(col[-1] * (p.b[l] + n) / (n + 1))
        per_index.append(col)
    return caps, forced, ratio, per_index


def fd_poly(p, t=Truncation()):
    """Exact truncated F_D as a SeriesPoly (finite when a or the b_l terminate)."""
    caps, forced, ratio, per_index = _fd_setup(p, t, EXACT)
    coeffs = {}
    for n in product(*(range(c + 1) for c in caps)):
        coef = ratio[sum(n)]
        if coef == 0:
            continue
        for l, nl in enumerate(n):
            coef *= per_index[l][nl]
        if coef:
            coeffs[n] = coef
    poly = LaurentPoly(coeffs, (Fraction(0),) * p.m)
    return SeriesPoly(poly, 0, tuple(caps), tuple(forced))


def _check_disk(values, rho, where):
    worst = max((abs(v) for v in values), default=0.0)
    if worst > rho:
        raise DomainError(f"series variable of modulus {worst:.4g} exceeds rho = {rho}",
                          location=where, detail="move x closer to the expansion point")
    return worst


def _box_sum(coef, monos, caps, forced, q):
    """Value, per-index weighted sums and a geometric tail estimate."""
    terms = coef * monos
    value = terms.sum()
    m = terms.ndim
    weighted = []
    for l in range(m):
        shape = [1] * m
        shape[l] = -1
        weighted.append((terms * np.arange(terms.shape[l]).reshape(shape)).sum())
    tail = 0.0
    if not all(forced) and q > 0:
        mag = np.abs(terms)
        shell = np.zeros(terms.shape, dtype=bool)
        for l in range(m):
            if not forced[l]:
                idx = [slice(None)] * m
                idx[l] = caps[l]
                shell[tuple(idx)] = True
        tail = float(mag[shell].sum() * q / (1 - q)) if q < 1 else float("inf")
    return value, weighted, tail


def _outer(arrays):
    out = np.array(1.0 + 0j)
    for l, arr in enumerate(arrays):
        shape = [1] * len(arrays)
        shape[l] = -1
        out = out * np.asarray(arr, dtype=complex).reshape(shape)
    return out


def _index_grid(caps, signs):
    total = np.zeros([c + 1 for c in caps], dtype=np.int64)
    for l, (c, s) in enumerate(zip(caps, signs)):
        shape = [1] * len(caps)
        shape[l] = -1
        total = total + s * np.arange(c + 1).reshape(shape)
    return total


def _fd_float(p, x, t):
    p = Params.make(p.a, p.b, p.c, FLOAT)
    x = tuple(complex(v) for v in x)
    caps, forced, ratio, per_index = _fd_setup(p, t, FLOAT)
    q = 0.0
    if not all(forced):
        q = _check_disk([xi for xi, f in zip(x, forced) if not f], t.rho, "fd_series")
    ratio = np.asarray(ratio, dtype=complex)
    coef = ratio[_index_grid(caps, [1] * p.m)] * _outer(per_index)
    monos = _outer([[xi ** n for n in range(c + 1)] for xi, c in zip(x, caps)])
    value, _, tail = _box_sum(coef, monos, caps, forced, q)
    powers = [[xi ** n for n in range(c + 1)] for xi, c in zip(x, caps)]
    grad = []
    for l, xl in enumerate(x):
        arrays = list(powers)
        arrays[l] = [0j] + [n * xl ** (n - 1) for n in range(1, caps[l] + 1)]
        grad.append((coef * _outer(arrays)).sum())
    return value, grad, tail, all(forced)


def fd_series(p, x, t=Truncation()):
    """Truncated (or exactly terminating) sum of F_D(a, b, c; x)."""
    x = _coords(x)
    if len(x) != p.m:
        raise DomainError("x must have m coordinates", location="fd_series")
    if _mode(p, x) == EXACT:
        sp = fd_poly(p, t)
        return SeriesValue(sp.poly.evaluate(x), 0.0, sp.finite, sp.poly)
    value, _, tail, finite = _fd_float(p, x, t)
    return SeriesValue(value, tail, finite)


# -- f^(k) -----------------------------------------------------------------

def prefactor_exponents(p, k):
    """Exponents of x_1..x_m in prod_{l<k} x_l^{-b_l} * x_k^{sum_{l<k} b_l - c + 1}."""
    lam = [p.c * 0] * p.m
    for l in range(k - 1):
        lam[l] = -p.b[l]
    lam[k - 1] = sum(p.b[: k - 1]) - p.c + 1
    return tuple(lam)


def window_ok(p, k):
    """Integer-parameter window in which the f^(k) limit is taken termwise."""
    return (-sum(p.b[:k]) + p.c > 0) and (2 + sum(p.b[: k - 1]) - p.c > 0)


def _fk_setup(p, k, t, mode):
    m, N = p.m, t.order
    if not 1 <= k <= m:
        raise DomainError(f"k = {k} outside 1..{m}", location="fk_series")
    if mode == EXACT and p.is_integral() and not window_ok(p, k):
        raise DomainError(
            f"integer parameters outside the window for f^({k})",
            location="fk_series",
            detail="need -sum_{l<=k} b_l + c > 0 and 2 + sum_{l<k} b_l - c > 0",
        )
    caps, forced = [N] * m, [False] * m
    bases = []
    for l in range(m):
        base = p.c - p.a if l == k - 1 else 1 - p.b[l]
        bases.append(base)
        nb = integer_value(base)
        if nb is not None and (mode == EXACT or nb - 1 <= N):
            caps[l], forced[l] = max(nb - 1, -1), True
    if any(c < 0 for c in caps):
        return caps, forced, None, None, False
    normalized = False
    per_index = []
    for l in range(m):
        table, norm = _rgamma_table(bases[l], -caps[l], 0, mode)
        normalized |= norm
        per_index.append([table[-n] * _inv_fact(n, mode) for n in range(caps[l] + 1)])
    lo = -sum(caps[k:]) if k < m else 0
    hi = sum(caps[:k])
    e_base = -sum(p.b[:k]) + p.c
    f_base = 2 + sum(p.b[: k - 1]) - p.c
    t1, n1 = _rgamma_table(e_base, -hi, -lo, mode)
    t2, n2 = _rgamma_table(f_base, lo, hi, mode)
    normalized |= n1 or n2
    shifted = {s: t1[-s] * t2[s] for s in range(lo, hi + 1)}
    return caps, forced, per_index, shifted, normalized


def _fk_exponent(n, k):
    m = len(n)
    v = [0] * m
    for l in range(m):
        if l < k - 1:
            v[l] = -n[l]
        elif l > k - 1:
            v[l] = n[l]
    v[k - 1] = sum(n[: k - 1]) + n[k - 1] - sum(n[k:])
    return tuple(v)


def fk_poly(p, k, t=Truncation()):
    """Exact f^(k) as a SeriesPoly; prefactor carried in the shift."""
    caps, forced, per_index, shifted, normalized = _fk_setup(p, k, t, EXACT)
    m = p.m
    coeffs = {}
    if all(c >= 0 for c in caps):
        for n in product(*(range(c + 1) for c in caps)):
            nprime = sum(n[:k]) - sum(n[k:])
            coef = shifted[nprime]
            if coef == 0:
                continue
            for l in range(m):
                coef *= per_index[l][n[l]]
            if coef:
                coeffs[_fk_exponent(n, k)] = coef
    poly = LaurentPoly(coeffs, prefactor_exponents(p, k))
    return SeriesPoly(poly, k, tuple(caps), tuple(forced), normalized)


def _fk_variables(x, k):
    xk = x[k - 1]
    if xk == 0:
        raise PoleError("x_k = 0 is a branch point of f^(k)", location="fk_series")
    out = []
    for l, xl in enumerate(x):
        if l < k - 1:
            if xl == 0:
                raise PoleError(f"x_{l + 1} = 0", location="fk_series")
            out.append(xk / xl)
        elif l == k - 1:
            out.append(xk)
        else:
            out.append(xl / xk)
    return out


def _fk_float(p, x, k, t):
    p = Params.make(p.a, p.b, p.c, FLOAT)
    x = tuple(complex(v) for v in x)
    caps, forced, per_index, shifted, _ = _fk_setup(p, k, t, FLOAT)
    m = p.m
    if any(c < 0 for c in caps):
        return 0j, [0j] * m, 0.0, True
    y = _fk_variables(x, k)
    q = 0.0
    if not all(forced):
        q = _check_disk([yl for yl, f in zip(y, forced) if not f], t.rho, "fk_series")
    lo = min(shifted)
    table = np.asarray([shifted[s] for s in range(lo, max(shifted) + 1)], dtype=complex)
    signs = [1 if l <= k - 1 else -1 for l in range(m)]
    coef = table[_index_grid(caps, signs) - lo] * _outer(per_index)
    monos = _outer([[yl ** n for n in range(c + 1)] for yl, c in zip(y, caps)])
    s0, weighted, tail = _box_sum(coef, monos, caps, forced, q)
    lam = prefactor_exponents(p, k)
    pref = 1
    for xl, ll in zip(x, lam):
        if ll != 0:
            pref *= cpow(xl, ll)
    # sum over terms of the exponent v_i of x_i
    vsum = []
    for i in range(m):
        if i < k - 1:
            vsum.append(-weighted[i])
        elif i > k - 1:
            vsum.append(weighted[i])
        else:
            vsum.append(sum(weighted[: k - 1]) + weighted[k - 1] - sum(weighted[k:]))
    value = pref * s0
    grad = [pref * (lam[i] * s0 + vsum[i]) / x[i] for i in range(m)]
    return value, grad, abs(pref) * tail, all(forced)


def fk_series(p, x, k, t=Truncation()):
    """Laurent series solution f^(k)(a, b, c; x), prefactor included.

    Float mode uses the branch arg(x) in [-pi, pi); exact mode needs integer
    parameters (so the prefactor is rational) unless only the polynomial is
    wanted, see :func:`fk_poly`.
    """
    x = _coords(x)
    if len(x) != p.m:
        raise DomainError("x must have m coordinates", location="fk_series")
    if _mode(p, x) == EXACT:
        sp = fk_poly(p, k, t)
        if sp.normalized or any(integer_value(s) is None for s in sp.poly.shift):
            raise DomainError("exact evaluation of f^(k) needs integer parameters",
                              location="fk_series", detail="use fk_poly or float mode")
        return SeriesValue(sp.poly.evaluate(x), 0.0, sp.finite, sp.poly)
    value, _, tail, finite = _fk_float(p, x, k, t)
    return SeriesValue(value, tail, finite)


def f_vector(p, x, t=Truncation(), which=0):
    """(f, (x_1-1)/alpha_1 df/dx_1, ..., (x_m-1)/alpha_m df/dx_m).

    ``which=0`` selects F_D, ``which=k`` (1..m) selects f^(k).  alpha_i = -b_i.
    """
    x = _coords(x)
    if _mode(p, x) == EXACT:
        if which == 0:
            sp = fd_poly(p, t)
        else:
            sp = fk_poly(p, which, t)
            if sp.normalized:
                raise DomainError("exact f^(k) vector needs integer parameters",
                                  location="f_vector")
        value = sp.poly.evaluate(x)
        grad = sp.poly.gradient(x)
    elif which == 0:
        value, grad, _, _ = _fd_float(p, x, t)
    else:
        value, grad, _, _ = _fk_float(p, x, which, t)
    out = [value]
    for i, g in enumerate(grad):
        alpha = -p.b[i]
        if alpha == 0:
            raise DomainError(f"alpha_{i + 1} = -b_{i + 1} vanishes", location="f_vector")
        out.append((x[i] - 1) / alpha * g)
    return out


# -- the differential system ------------------------------------------------

@dataclass
class AnnihilationReport:
    which: int
    checked: int = 0
    failures: list = field(default_factory=list)
    operators: list = field(default_factory=list)

    @property
    def ok(self):
        return self.checked > 0 and not self.failures


def _unit(i, m, sign=1):
    return tuple(sign if j == i else 0 for j in range(m))


def _vadd(v, w):
    return tuple(a + b for a, b in zip(v, w))


def ed_operators(p, f):
    """Images of f under the generators of the F_D system.

    Yields (name, image, input_offsets): the coefficient of x^w in the image
    depends only on coefficients of f at w + offset.
    """
    m = p.m
    a, b, c = p.a, p.b, p.c
    th = f.theta_total()
    for i in range(m):
        left = (th + f.scale(c - 1)).theta(i)
        right = f.theta(i) + f.scale(b[i])
        right = (right.theta_total() + right.scale(a)).mul_x(i)
        yield f"theta_{i + 1}(theta+c-1) - x_{i + 1}(theta+a)(theta_{i + 1}+b_{i + 1})", \
            left - right, [(0,) * m, _unit(i, m, -1)]
    for i in range(m):
        for j in range(i + 1, m):
            dij = f.diff(j).diff(i)
            image = dij.mul_x(i) - dij.mul_x(j) - f.diff(i).scale(b[j]) + f.diff(j).scale(b[i])
            name = (f"(x_{i + 1}-x_{j + 1}) d_{i + 1} d_{j + 1}"
                    f" - b_{j + 1} d_{i + 1} + b_{i + 1} d_{j + 1}")
            yield name, image, [_unit(i, m), _unit(j, m)]


def ed_annihilation(p, which=0, t=Truncation(order=6)):
    """Apply the F_D system to a truncated series and check the safe window.

    A coefficient of the image is checked only when none of the series
    coefficients it depends on was dropped by the truncation box.
    """
    if mode_of(p.a, p.b, p.c) != EXACT:
        raise DomainError("ed_annihilation runs in exact mode", location="ed_annihilation")
    sp = fd_poly(p, t) if which == 0 else fk_poly(p, which, t)
    report = AnnihilationReport(which)
    support = list(sp.poly.coeffs)
    for name, image, offsets in ed_operators(p, sp.poly):
        report.operators.append(name)
        candidates = {_vadd(v, tuple(-o for o in off)) for v in support for off in offsets}
        candidates |= set(image.coeffs)
        for w in candidates:
            if any(sp.truncated_away(_vadd(w, off)) for off in offsets):
                continue
            report.checked += 1
            coef = image.coeffs.get(w, 0)
            if coef != 0:
                report.failures.append((name, w, coef))
    return report

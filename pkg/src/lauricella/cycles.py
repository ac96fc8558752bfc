"""Numerical integrals on the homology side.

* :func:`euler_integral_fd` evaluates the Euler-type integral of F_D on
  (1, infinity) after t = 1/s.
* :func:`cycle_integral_s` integrates v_x ds/(s(1-s)) over the twisted cycle
  r~_k (two circles plus a segment with branch-correcting weights).
* :func:`cycle_integral` integrates u_x phi_j over r_k = iota_*(r~_k) in the
  t-plane, t = x_k / s, tracking every factor (t - x_i)^alpha_i separately.

Branches are tracked by unwrapping arguments along densely sampled paths.
Each step must move every argument by less than pi/4, otherwise a
:class:`~lauricella.errors.BranchError` is raised.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .cohomology import XPoint
from .errors import BranchError, DomainError
from .scalar import Params, alphas, cpow, gamma_complex, integer_value, is_generic
from .series import Truncation, f_vector, fk_series, prefactor_exponents

DEFAULT_EPS = 0.25
DEFAULT_XI = 0.05
MAX_STEP_ARG = math.pi / 4


# -- Euler integral ----------------------------------------------------------

def euler_integral_fd(p, x, epsrel=1e-12):
    """F_D through Gamma(c)/(Gamma(a)Gamma(c-a)) times the integral on (1, inf).

    With t = 1/s the integral becomes
    int_0^1 s^{a-1} (1-s)^{c-a-1} prod (1 - x_i s)^{-b_i} ds, whose endpoint
    powers are handled by QUADPACK's algebraic weight.
    """
    vals = [p.a, *p.b, p.c, *tuple(x)]
    if any(complex(v).imag != 0 for v in vals):
        raise DomainError("euler_integral_fd needs real parameters and x",
                          location="euler_integral_fd")
    a, c = float(complex(p.a).real), float(complex(p.c).real)
    b = [float(complex(v).real) for v in p.b]
    xs = [float(complex(v).real) for v in x]
    if not (a > 0 and c - a > 0):
        raise DomainError(f"need a > 0 and c - a > 0, got a = {a}, c = {c}",
                          location="euler_integral_fd", detail="integral diverges")
    if any(not 0 <= xi < 1 for xi in xs):
        raise DomainError("need 0 <= x_i < 1", location="euler_integral_fd")

    def g(s):
        out = 1.0
        for bi, xi in zip(b, xs):
            out *= (1.0 - xi * s) ** (-bi)
        return out

    val, err, *rest = integrate.quad(g, 0.0, 1.0, weight="alg", wvar=(a - 1.0, c - a - 1.0),
                                     epsabs=0.0, epsrel=epsrel, limit=200, full_output=1)
    if len(rest) > 1 and rest[1]:
        raise DomainError("quadrature did not converge", location="euler_integral_fd",
                          detail=str(rest[1]))
    return complex(math.gamma(c) / (math.gamma(a) * math.gamma(c - a)) * val)


# -- chain data --------------------------------------------------------------

def base_point(m, k, xi=DEFAULT_XI):
    """x^(k) = (xi, xi^2, ..., -xi^k, ..., xi^m); x_k carries arg -pi."""
    return XPoint(tuple(-(xi ** i) if i == k else xi ** i for i in range(1, m + 1)))


def _lam(alpha):
    return cmath.exp(2j * cmath.pi * complex(alpha))


@dataclass(frozen=True)
class CycleSpec:
    """The chain c0 C_0 + [eps, 1-eps] + c1 C_1 together with its quadrature."""

    m: int
    k: int
    eps: float = DEFAULT_EPS
    xi: float = DEFAULT_XI
    panels: int = 12
    nodes: int = 24

    def __post_init__(self):
        if not 1 <= self.k <= self.m:
            raise DomainError(f"k = {self.k} outside 1..{self.m}", location="CycleSpec")
        if not 0 < self.eps < 0.5:
            raise DomainError("eps must lie in (0, 1/2)", location="CycleSpec")
        if not 0 < self.xi < min(self.eps, 1 / (1 + self.eps)):
            raise DomainError("xi must satisfy 0 < xi < min(eps, 1/(1+eps))",
                              location="CycleSpec")

    def refined(self):
        return CycleSpec(self.m, self.k, self.eps, self.xi, 2 * self.panels, self.nodes)

    def x(self):
        return base_point(self.m, self.k, self.xi)

    def circle_factor(self, p):
        """Monodromy expected around C_0: prod_{l<k} lambda_l * lambda_{m+1} lambda_{m+2}."""
        al = alphas(p)
        out = _lam(al[self.m + 1]) * _lam(al[self.m + 2])
        for l in range(1, self.k):
            out *= _lam(al[l])
        return out

    def coefficients(self, p):
        """(c0, c1) weighting C_0 and C_1."""
        al = alphas(p)
        big = self.circle_factor(p)
        lk = _lam(al[self.k])
        if abs(big - 1) < 1e-12:
            raise DomainError("prod lambda_l * lambda_{m+1} lambda_{m+2} = 1",
                              location="CycleSpec.coefficients")
        if abs(lk - 1) < 1e-12:
            raise DomainError(f"lambda_{self.k} = 1", location="CycleSpec.coefficients")
        return 1 / (big - 1), -1 / (lk - 1)


def _check_x(spec, x):
    """Real x with x_k < 0 < x_l and the separation the expansions need."""
    xs = [complex(v) for v in x]
    if len(xs) != spec.m or any(v.imag != 0 for v in xs):
        raise DomainError("x must be real with m entries", location="cycle x")
    xs = [v.real for v in xs]
    k, eps = spec.k, spec.eps
    xk = xs[k - 1]
    ok = xk < 0 and all(v > 0 for i, v in enumerate(xs) if i != k - 1)
    ok = ok and abs(xk) < eps
    ok = ok and all(abs(xk / xs[l]) < eps for l in range(k - 1))
    ok = ok and all(abs(xs[l] / xk) * (1 + eps) < 1 for l in range(k, spec.m))
    if not ok:
        raise DomainError("x is not in the region where r_k is built",
                          location="cycle x",
                          detail="need x_k < 0 < x_l, |x_k| < eps, |x_k/x_l| < eps (l<k), "
                                 "|x_l/x_k|(1+eps) < 1 (l>k)")
    return xs


def _check_params(p):
    if not is_generic(p):
        raise DomainError("parameters are not generic (some alpha is an integer)",
                          location="cycles")


# -- quadrature on the three pieces -----------------------------------------

def _panels(lo, hi, panels, nodes):
    """Gauss-Legendre nodes and weights on [lo, hi], in increasing order."""
    g, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.linspace(lo, hi, panels + 1)
    pts, wts = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        pts.append(0.5 * (b - a) * g + 0.5 * (a + b))
        wts.append(0.5 * (b - a) * w)
    return np.concatenate(pts), np.concatenate(wts)


@dataclass
class Piece:
    """Sampled path: z[0] is the start, z[-1] the end, z[1:-1] quadrature nodes."""

    name: str
    z: np.ndarray
    dz: np.ndarray
    w: np.ndarray


def _pieces(spec):
    eps = spec.eps
    th, wth = _panels(0.0, 2 * math.pi, spec.panels, spec.nodes)
    th = np.concatenate([[0.0], th, [2 * math.pi]])
    c0 = eps * np.exp(1j * th)
    c1 = 1 - eps * np.exp(1j * th)      # starts at 1-eps, counterclockwise about 1
    sg, wsg = _panels(eps, 1 - eps, max(2, spec.panels // 2), spec.nodes)
    sg = np.concatenate([[eps], sg, [1 - eps]]).astype(complex)
    return {
        "C0": Piece("C0", c0, 1j * c0, wth),
        "seg": Piece("seg", sg, np.ones_like(sg), wsg),
        "C1": Piece("C1", c1, 1j * (c1 - 1), wth),
    }


def _track(base, exponent, arg0=None):
    """Continue base**exponent along the sampled path.

    Starts from the principal argument of base[0] unless ``arg0`` is given.
    Returns the values and the final argument.
    """
    ang = np.angle(base)
    step = np.abs(np.diff(ang))
    step = np.minimum(step, 2 * math.pi - step)
    if step.size and step.max() > MAX_STEP_ARG:
        raise BranchError("argument jumps by more than pi/4 between samples",
                          location="cycles._track", detail=float(step.max()))
    un = np.unwrap(ang)
    if arg0 is not None:
        un = un + (arg0 - un[0])
    e = complex(exponent)
    return np.exp(e * (np.log(np.abs(base)) + 1j * un)), float(un[-1])


class TrackedProduct:
    """prod_i g_i(z)^{e_i} continued along the pieces of a chain."""

    def __init__(self, factors):
        self.factors = factors  # list of (callable z -> base, exponent)

    def along(self, z, args0=None):
        vals = np.ones(len(z), dtype=complex)
        ends = []
        for i, (g, e) in enumerate(self.factors):
            v, end = _track(g(z), e, None if args0 is None else args0[i])
            vals *= v
            ends.append(end)
        return vals, ends


def _v_factors(p, x, k):
    """Factors of v_x(s) in its defining (unexpanded) form."""
    al = [complex(v) for v in alphas(p)]
    m = p.m
    xk = x[k - 1]
    fs = []
    for l in range(1, k):
        fs.append((lambda s, r=xk / x[l - 1]: s - r, al[l]))
    fs.append((lambda s: s - xk, al[m + 1] - 1))
    for l in range(k + 1, m + 1):
        fs.append((lambda s, r=x[l - 1] / xk: 1 - r * s, al[l]))
    fs.append((lambda s: s, al[m + 2]))
    fs.append((lambda s: 1 - s, al[k] + 1))
    return TrackedProduct(fs)


def _u_factors(p, x):
    """Factors (t - x_i)^{alpha_i}, i = 0..m+1, of u_x(t)."""
    al = [complex(v) for v in alphas(p)]
    pts = [0.0, *x, 1.0]
    return TrackedProduct([(lambda t, xi=xi: t - xi, al[i]) for i, xi in enumerate(pts)])


@dataclass
class ChainResult:
    value: complex
    monodromy: dict = field(default_factory=dict)


def _integrate_chain(spec, p, product, form, to_plane=None):
    """Sum over the pieces of coeff * int product * form.

    ``to_plane`` maps s to the plane in which ``product`` is tracked (identity
    for v_x, s -> x_k/s for u_x); ``form(s)`` is the integrand's remaining
    density with respect to s.  Returns the value and the tracked
    end/start ratios on the circles.
    """
    c0, c1 = spec.coefficients(p)
    pcs = _pieces(spec)
    mp = to_plane or (lambda s: s)
    seg = pcs["seg"]
    v_seg, ends = product.along(mp(seg.z))
    v_c0, _ = product.along(mp(pcs["C0"].z))
    v_c1, _ = product.along(mp(pcs["C1"].z), args0=ends)
    total = 0j
    for coeff, pc, v in ((c0, pcs["C0"], v_c0), (1.0, seg, v_seg), (c1, pcs["C1"], v_c1)):
        s = pc.z[1:-1]
        total += coeff * np.sum(pc.w * v[1:-1] * form(s) * pc.dz[1:-1])
    mono = {"C0": complex(v_c0[-1] / v_c0[0]), "C1": complex(v_c1[-1] / v_c1[0])}
    return ChainResult(complex(total), mono)


def cycle_integral_s(spec, p, x=None):
    """int over r~_k of v_x ds / (s(1-s))."""
    _check_params(p)
    x = _check_x(spec, spec.x() if x is None else x)
    prod = _v_factors(p, x, spec.k)
    return _integrate_chain(spec, p, prod, lambda s: 1 / (s * (1 - s)))


def pullback_constant(p, x, k):
    """K with u_x(iota(s)) iota^* phi_0 = K v_x(s) ds/(s(1-s)), arg x_k = -pi."""
    al = alphas(p)
    m = p.m
    ph = sum(complex(al[l]) for l in range(1, k)) + complex(al[m + 1])
    out = cmath.exp(-1j * cmath.pi * ph)
    for l in range(1, k):
        out *= cpow(complex(x[l - 1]), al[l])
    ek = complex(al[0]) + sum(complex(al[l]) for l in range(k, m + 1)) + 1
    return out * cpow(complex(x[k - 1]), ek)


def _phi_density(x, j, m):
    """phi_j as a multiple of dt: 1/(t-1), minus 1/(t-x_j) for j >= 1."""
    if j == 0:
        return lambda t: 1 / (t - 1)
    if not 1 <= j <= m:
        raise DomainError(f"j = {j} outside 0..{m}", location="cycle_integral")
    xj = x[j - 1]
    return lambda t: 1 / (t - 1) - 1 / (t - xj)


def cycle_integral(spec, p, j=0, x=None):
    """int over r_k of u_x phi_j, computed in the t-plane.

    The branch of u_x at the starting point t = x_k/eps is fixed by the
    pullback identity; afterwards each factor (t - x_i)^{alpha_i} is
    continued on its own.
    """
    _check_params(p)
    x = _check_x(spec, spec.x() if x is None else x)
    k, eps = spec.k, spec.eps
    xk = x[k - 1]
    u = _u_factors(p, x)
    to_t = lambda s: xk / s  # noqa: E731
    # anchor: u_x(x_k/eps) * (-x_k/(eps^2 (t0 - 1))) = K v_x(eps) / (eps (1 - eps))
    v0, _ = _v_factors(p, x, k).along(np.array([eps, eps], dtype=complex))
    u0, _ = u.along(np.array([xk / eps, xk / eps], dtype=complex))
    t0 = xk / eps
    target = pullback_constant(p, x, k) * v0[0] / (eps * (1 - eps)) / (-xk / (eps ** 2 * (t0 - 1)))
    scale = target / u0[0]
    phi = _phi_density(x, j, p.m)
    res = _integrate_chain(spec, p, u, lambda s: scale * phi(xk / s) * (-xk / s ** 2), to_t)
    return ChainResult(res.value, res.monodromy)


# -- right-hand sides --------------------------------------------------------

def gamma_prefactor(p, k):
    """Gamma(c-a) prod Gamma(1-b_l) Gamma(B-c) Gamma(1-B+c), B = sum_{l<k} b_l."""
    B = sum(complex(v) for v in p.b[: k - 1])
    a, c = complex(p.a), complex(p.c)
    out = gamma_complex(c - a) * gamma_complex(B - c) * gamma_complex(1 - B + c)
    for bl in p.b:
        out *= gamma_complex(1 - complex(bl))
    return out


def correspondence_phase(p, k):
    B = sum(complex(v) for v in p.b[: k - 1])
    return cmath.exp(1j * cmath.pi * (B - complex(p.c) + complex(p.a)))


def cycle_series_rhs(p, x, k, t=Truncation()):
    """Gamma prefactor times the Laurent sum without the monomial prefactor."""
    lam = prefactor_exponents(p, k)
    pref = 1
    for xi, e in zip(x, lam):
        pref *= cpow(complex(xi), e)
    return gamma_prefactor(p, k) * fk_series(p, tuple(complex(v) for v in x), k, t).value / pref


def correspondence_rhs_vector(p, x, k, t=Truncation()):
    """Gamma prefactor * phase * F^(k)(a, b, c; x)."""
    g = gamma_prefactor(p, k) * correspondence_phase(p, k)
    return [g * v for v in f_vector(p, tuple(complex(v) for v in x), t, which=k)]


# -- reports -----------------------------------------------------------------

def _rel(a, b):
    return float(abs(a - b) / max(abs(b), 1e-300))


@dataclass
class CycleReport:
    lhs: complex
    rhs: complex
    rel_err: float
    monodromy_checks: dict
    tolerance: float
    monodromy_tolerance: float

    @property
    def ok(self):
        return (self.rel_err <= self.tolerance
                and all(v <= self.monodromy_tolerance for v in self.monodromy_checks.values()))

    def to_json(self):
        lhs, rhs = complex(self.lhs), complex(self.rhs)
        return {"lhs": [lhs.real, lhs.imag], "rhs": [rhs.real, rhs.imag],
                "rel_err": self.rel_err, "monodromy_checks": self.monodromy_checks,
                "tolerance": self.tolerance, "ok": self.ok}


def _monodromy_checks(spec, p, chain):
    al = alphas(p)
    want0 = spec.circle_factor(p)
    want1 = _lam(al[spec.k])
    return {"C0": _rel(chain.monodromy["C0"], want0), "C1": _rel(chain.monodromy["C1"], want1)}


def verify_cycle_series(p, spec, x=None, tol=1e-6, mono_tol=1e-8, t=Truncation()):
    """Compare int_{r~_k} v_x ds/(s(1-s)) with the Gamma-weighted Laurent sum."""
    x = spec.x() if x is None else x
    chain = cycle_integral_s(spec, p, x)
    rhs = cycle_series_rhs(p, x, spec.k, t)
    return CycleReport(chain.value, rhs, _rel(chain.value, rhs),
                       _monodromy_checks(spec, p, chain), tol, mono_tol)


def verify_cycle_correspondence(p, k, x=None, spec=None, tol=1e-6, mono_tol=1e-8, j=0,
                       t=Truncation()):
    """int_{r_k} u_x phi_j against the Gamma prefactor times F^(k)_j.

    The left side is computed in the t-plane; the monodromy checks come from
    the s-plane continuation of v_x around C_0 and C_1.
    """
    spec = spec or CycleSpec(p.m, k)
    x = spec.x() if x is None else x
    lhs = cycle_integral(spec, p, j, x).value
    rhs = correspondence_rhs_vector(p, x, k, t)[j]
    chain = cycle_integral_s(spec, p, x)
    return CycleReport(lhs, rhs, _rel(lhs, rhs), _monodromy_checks(spec, p, chain), tol,
                       mono_tol)


def generic_params(rng, m, lo=0.05, hi=0.95):
    """Random real parameters whose exponents keep a margin from the integers."""
    while True:
        a = rng.uniform(lo, hi)
        b = [rng.uniform(lo, hi) for _ in range(m)]
        c = a + rng.uniform(0.2, 1.5)
        p = Params.make(a, b, c)
        al = alphas(p)
        sums = [al[0]] + [complex(v) for v in al[1:]]
        if all(abs(complex(v).real - round(complex(v).real)) > 0.05 for v in sums):
            if all(integer_value(v) is None for v in (p.c - sum(p.b[:j]) for j in range(m + 1))):
                return p


__all__ = [
    "euler_integral_fd", "base_point", "CycleSpec", "cycle_integral_s", "cycle_integral",
    "pullback_constant", "gamma_prefactor", "cycle_series_rhs", "correspondence_rhs_vector",
    "CycleReport", "verify_cycle_series", "verify_cycle_correspondence", "generic_params",
]

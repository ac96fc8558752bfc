"""Shared draws and residual helpers for the test modules."""

import cmath
import itertools
import random
from fractions import Fraction

from lauricella import cohomology
from lauricella.errors import DomainError
from lauricella.scalar import Params, alphas, integer_mode_ok
from lauricella.series import Truncation, f_vector
from lauricella.tables import x_from_p


def far_from_int(v, margin=0.08):
    v = complex(v)
    return abs(v.real - round(v.real)) > margin or abs(v.imag) > margin


def generic_float_params(rng, m):
    """Real parameters in (-2, 2) away from every integer the relations touch.

    Shifted points (a+1, c+1, c-1, ...) inherit the margin, so one check on
    the combinations below covers every matrix and series in a relation.
    """
    while True:
        a = rng.uniform(-2, 2)
        b = [rng.uniform(-2, 2) for _ in range(m)]
        c = rng.uniform(-2, 2)
        combos = [a, c, c - a, *b]
        combos += [c - sum(b[:j]) for j in range(1, m + 1)]
        combos += [sum(b) - c]
        if all(far_from_int(v) for v in combos):
            return Params.make(a, b, c)


def geometric_x(rng, m, q=0.25):
    """x_l = q^l e^{i theta_l}: inside the F_D disk and every f^(k) pattern."""
    return tuple(q ** l * cmath.exp(1j * rng.uniform(-2.5, 2.5)) for l in range(1, m + 1))


def rel_residual(lhs, rhs):
    num = sum(abs(complex(u) - complex(v)) ** 2 for u, v in zip(lhs, rhs)) ** 0.5
    den = sum(abs(complex(u)) ** 2 for u in lhs) ** 0.5
    return num / den


def relations(m):
    """(name, parameter shift, matrix builder, variant) for every relation."""
    out = [
        ("D_a", lambda p: p.shifted(da=-1), cohomology.d_a, "F"),
        ("D_c", lambda p: p.shifted(dc=-1), cohomology.d_c, "F"),
        ("D_a^(k)", lambda p: p.shifted(da=-1), cohomology.d_a_k, "Fk"),
        ("D_c^(k)", lambda p: p.shifted(dc=-1), cohomology.d_c_k, "Fk"),
    ]
    for l in range(1, m + 1):
        out.append((f"D_{l}", lambda p, l=l: p.shifted_b(l, -1),
                    lambda p, x, l=l: cohomology.d_bk(p, x, l), "F"))
        out.append((f"D_{l}^(k)", lambda p, l=l: p.shifted_b(l, -1),
                    lambda p, x, l=l: cohomology.d_l_k(p, x, l), "Fk"))
    return out


def relation_residuals(p, x, t=Truncation()):
    """Largest residual per relation; Fk relations are checked for every k."""
    out = {}
    vecs = {}

    def vec(q, which):
        key = (q, which)
        if key not in vecs:
            vecs[key] = f_vector(q, x, t, which=which)
        return vecs[key]

    for name, shift, build, variant in relations(p.m):
        M = build(p, x)
        ks = [0] if variant == "F" else range(1, p.m + 1)
        worst = 0.0
        for k in ks:
            F = vec(p, k)
            G = vec(shift(p), k)
            MF = [sum(M[i][j] * F[j] for j in range(len(F))) for i in range(len(F))]
            worst = max(worst, rel_residual(G, MF))
        out[name] = worst
    return out


def random_rational(rng, lo=-40, hi=40, den=12):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_exact_params(rng, m):
    while True:
        p = Params.make(random_rational(rng), [random_rational(rng) for _ in range(m)],
                        random_rational(rng))
        if integer_mode_ok(p) and alphas(p)[0] != 0:
            return p


def random_xpoint(rng, m):
    while True:
        try:
            return cohomology.XPoint.make([random_rational(rng) for _ in range(m)])
        except DomainError:
            continue


def random_p(rng, m, hi=20):
    """Positive rational 2 x (m+1) weights whose x point is nondegenerate."""
    while True:
        p = [[Fraction(rng.randint(1, hi), rng.randint(1, hi)) for _ in range(m + 1)]
             for _ in range(2)]
        try:
            x_from_p(p)
            return p
        except DomainError:
            continue


def compositions(t, parts):
    """Ordered tuples of ``parts`` positive integers summing to t."""
    for cut in itertools.combinations(range(1, t), parts - 1):
        edges = (0,) + cut + (t,)
        yield tuple(edges[i + 1] - edges[i] for i in range(parts))


def all_marginals(ms=(1, 2, 3), tmax=12):
    from lauricella.tables import Marginals
    for m in ms:
        for t in range(2, tmax + 1):
            for g in compositions(t, m + 1):
                for b1 in range(1, t):
                    yield Marginals((b1, t - b1), g)


def seeded(seed):
    return random.Random(seed)

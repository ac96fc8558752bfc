import math
from fractions import Fraction as Fr

import pytest
import scipy.special
from hypothesis import given
from hypothesis import strategies as st

from helpers import generic_float_params, geometric_x, random_p, seeded
from lauricella import tables
from lauricella.contiguity import integer_params
from lauricella.errors import DomainError
from lauricella.scalar import Params
from lauricella.series import (LaurentPoly, Truncation, ed_annihilation, f_vector, fd_series,
                               fk_poly, fk_series, window_ok)


def test_fd_terminating_example():
    p = Params.make(-1, [-2, -3], 4)
    x = (Fr(1, 2), Fr(1, 3))
    sv = fd_series(p, x)
    assert sv.value == Fr(3, 2) and sv.finite
    assert f_vector(p, x) == [Fr(3, 2), Fr(-1, 8), Fr(-1, 6)]


@pytest.mark.parametrize("a,b,c,x", [
    (0.3, 0.7, 1.9, 0.2), (-0.4, 1.3, 2.2, -0.35), (1.5, -0.25, 0.6, 0.45), (2.1, 0.9, 3.3, 0.1),
])
def test_fd_m1_is_gauss(a, b, c, x):
    v = fd_series(Params.make(a, [b], c), (x,)).value
    ref = scipy.special.hyp2f1(a, b, c, x)
    assert abs(v - ref) <= 1e-13 * abs(ref)


def test_fd_at_origin_and_reduction():
    p = Params.make(0.3, [0.7, -1.1], 1.9)
    assert abs(fd_series(p, (0j, 0j)).value - 1) < 1e-15
    v = fd_series(p, (0.3, 0.0)).value
    assert abs(v - scipy.special.hyp2f1(0.3, 0.7, 1.9, 0.3)) < 1e-13


@given(st.integers(0, 10 ** 6))
def test_fd_permutation_symmetry(seed):
    rng = seeded(seed)
    p = generic_float_params(rng, 3)
    x = geometric_x(rng, 3, q=0.4)
    perm = [2, 0, 1]
    q = Params.make(p.a, [p.b[i] for i in perm], p.c)
    y = tuple(x[i] for i in perm)
    v1, v2 = fd_series(p, x).value, fd_series(q, y).value
    assert abs(v1 - v2) <= 1e-12 * abs(v1)


def test_truncation_refinement_float():
    rng = seeded(7)
    p = generic_float_params(rng, 2)
    x = geometric_x(rng, 2)
    for which in (0, 1, 2):
        a = f_vector(p, x, Truncation(40), which)
        b = f_vector(p, x, Truncation(60), which)
        assert max(abs(u - v) for u, v in zip(a, b)) <= 1e-13 * max(abs(u) for u in b)


def test_fd_disk_check():
    with pytest.raises(DomainError):
        fd_series(Params.make(0.3, [0.7], 1.9), (0.9,))


def test_fk_domain_checks():
    p = Params.make(0.31, [0.27, 0.41], 1.63)
    with pytest.raises(DomainError):
        fk_series(p, (0.05, 0.04), 1)  # |x_2/x_1| = 0.8 > rho
    with pytest.raises(DomainError):
        fk_series(Params.make("1/3", ["1/5"], "3/2"), (Fr(1, 10),), 1)


@pytest.mark.parametrize("beta1,gamma,k", [
    (2, (1, 2), 1), (3, (1, 1, 2), 2), (4, (2, 3, 1), 1), (6, (1, 2, 2, 3), 3), (3, (2, 1, 1), 1),
])
def test_fk_integer_against_enumeration(beta1, gamma, k):
    # t! p^{u_0} f^(k) = Z with Z computed by enumerating tables
    mg = tables.Marginals((beta1, sum(gamma) - beta1), gamma)
    assert tables.classify(mg) == k
    p = random_p(seeded(beta1 * 31 + k), len(gamma) - 1)
    x = tables.x_from_p(p).coords
    params = integer_params(beta1, gamma)
    assert window_ok(params, k)
    f = fk_series(params, x, k).value
    u0 = tables.u_table(mg, 0)
    assert math.factorial(mg.t) * tables.monomial(p, u0) * f == tables.z_bruteforce(mg, p)


def test_fk_integer_poly_is_finite():
    sp = fk_poly(integer_params(4, (2, 3, 1)), 1)
    assert sp.finite and not sp.normalized


@pytest.mark.parametrize("m", [1, 2, 3])
def test_annihilation_generic(m):
    rng = seeded(m)
    for _ in range(3):
        a = Fr(rng.randint(1, 30), rng.choice([7, 11, 13]))
        b = [Fr(rng.randint(-30, 30), rng.choice([7, 11, 13])) for _ in range(m)]
        c = Fr(rng.randint(1, 30), rng.choice([17, 19]))
        p = Params.make(a, b, c)
        for which in range(m + 1):
            rep = ed_annihilation(p, which)
            assert rep.ok, rep.failures[:3]


def test_annihilation_detects_wrong_series():
    p = Params.make(Fr(2, 7), [Fr(3, 11), Fr(-5, 13)], Fr(9, 17))
    wrong = Params.make(p.a, p.b, p.c + Fr(1, 3))
    from lauricella.series import ed_operators, fd_poly
    f = fd_poly(wrong, Truncation(6)).poly
    images = [img for _, img, _ in ed_operators(p, f)]
    assert any(not img.is_zero() for img in images)


def test_annihilation_integer_mode_fk():
    rep = ed_annihilation(Params.make(-3, [-1, -2], 0), which=1)
    assert rep.ok


def test_laurent_poly_algebra():
    f = LaurentPoly({(1, 0): Fr(2), (0, 2): Fr(3)}, (Fr(1, 2), Fr(0)))
    # theta_1 x_1^{1+1/2} = 3/2 x_1^{3/2}
    assert f.theta(0).coeffs == {(1, 0): Fr(3), (0, 2): Fr(3, 2)}
    assert (f - f).is_zero()
    x = (Fr(4), Fr(2))
    assert f.evaluate(x) == 2 * (2 * 4) + 3 * 4 * 2

import cmath
import random

import pytest

from lauricella import cycles
from lauricella.errors import DomainError
from lauricella.scalar import Params
from lauricella.series import fd_series

SPEC_PARAMS = Params.make(0.31, [0.27, 0.41], 1.63)


def test_euler_integral_example():
    p = Params.make(1 / 3, [1 / 5], 3 / 2)
    v = cycles.euler_integral_fd(p, [0.25])
    ref = fd_series(p, (0.25,)).value
    assert abs(v - ref) <= 1e-10 * abs(ref)


def test_euler_integral_at_origin():
    p = Params.make(0.7, [0.4, 1.3], 2.1)
    assert abs(cycles.euler_integral_fd(p, [0.0, 0.0]) - 1) < 1e-12


def test_euler_integral_permutation():
    p = Params.make(0.7, [0.4, 1.3], 2.1)
    q = Params.make(0.7, [1.3, 0.4], 2.1)
    a = cycles.euler_integral_fd(p, [0.2, 0.45])
    b = cycles.euler_integral_fd(q, [0.45, 0.2])
    assert abs(a - b) < 1e-12 * abs(a)
    assert abs(a - fd_series(p, (0.2, 0.45)).value) < 1e-10 * abs(a)


def test_euler_integral_rejects_divergent():
    with pytest.raises(DomainError):
        cycles.euler_integral_fd(Params.make(-0.5, [0.3], 1.2), [0.2])
    with pytest.raises(DomainError):
        cycles.euler_integral_fd(Params.make(0.5, [0.3], 0.4), [0.2])


def test_cycle_series_example():
    rep = cycles.verify_cycle_series(SPEC_PARAMS, cycles.CycleSpec(2, 1))
    assert rep.ok and rep.rel_err <= 1e-6


@pytest.mark.parametrize("m,k", [(1, 1), (2, 1), (2, 2)])
def test_correspondence_all_cocycles(m, k):
    p = SPEC_PARAMS if m == 2 else Params.make(0.31, [0.27], 1.63)
    for j in range(m + 1):
        rep = cycles.verify_cycle_correspondence(p, k, j=j)
        assert rep.ok, rep.to_json()


def test_monodromy_factors():
    spec = cycles.CycleSpec(2, 2)
    chain = cycles.cycle_integral_s(spec, SPEC_PARAMS)
    from lauricella.scalar import alphas
    al = alphas(SPEC_PARAMS)
    lam = [cmath.exp(2j * cmath.pi * v) for v in al]
    assert abs(chain.monodromy["C0"] - lam[1] * lam[3] * lam[4]) < 1e-12
    assert abs(chain.monodromy["C1"] - lam[2]) < 1e-12


def test_refinement_invariance():
    spec = cycles.CycleSpec(2, 1)
    a = cycles.cycle_integral(spec, SPEC_PARAMS).value
    b = cycles.cycle_integral(spec.refined(), SPEC_PARAMS).value
    assert abs(a - b) <= 1e-9 * abs(a)


def test_generic_draws():
    rng = random.Random(5)
    for m in (1, 2):
        for k in range(1, m + 1):
            p = cycles.generic_params(rng, m)
            assert cycles.verify_cycle_correspondence(p, k).ok


def test_preconditions():
    with pytest.raises(DomainError):
        cycles.CycleSpec(2, 3)
    with pytest.raises(DomainError):
        cycles.CycleSpec(2, 1, eps=0.6)
    with pytest.raises(DomainError):
        cycles.CycleSpec(2, 1, xi=0.3)
    # lambda_k -> 1 (b_1 an integer) is rejected before any integration
    with pytest.raises(DomainError):
        cycles.CycleSpec(2, 1).coefficients(Params.make(0.31, [2.0, 0.41], 1.63))
    with pytest.raises(DomainError):
        cycles.verify_cycle_correspondence(Params.make(1, [2, 3], 7), 1)
    with pytest.raises(DomainError):
        cycles.cycle_integral(cycles.CycleSpec(2, 1), SPEC_PARAMS, x=(0.05, 0.01))


def test_base_point():
    x = cycles.base_point(3, 2, 0.05)
    assert x.coords == (0.05, -(0.05 ** 2), 0.05 ** 3)

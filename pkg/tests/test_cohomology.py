from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_exact_params, random_xpoint, seeded
from lauricella import cohomology as co
from lauricella import linalg
from lauricella.errors import DomainError, SingularMatrixError
from lauricella.scalar import Params, alphas


def test_c_matrix_small_case():
    # m = 1: C = 1/alpha_2 * ones + diag(1/alpha_3, 1/alpha_1)
    p = Params.make("1/3", ["1/5"], "5/2")
    al = alphas(p)
    C = co.c_matrix(al)
    assert C == [[1 / al[2] + 1 / al[3], 1 / al[2]], [1 / al[2], 1 / al[2] + 1 / al[1]]]
    assert linalg.det(C) == co.det_c_closed(al)


def test_example_matrix_frozen():
    p = Params.make("1/3", ["1/5", "2/7"], "5/2")
    x = co.XPoint.make(["1/4", "2/3"])
    want = [[Fr(809, 910), Fr(3, 130), Fr(8, 91)],
            [Fr(-3, 13), Fr(3, 13), Fr(0)],
            [Fr(-4, 39), Fr(0), Fr(4, 39)]]
    assert co.d_a(p, x) == want
    assert co.example_d_a_m2(p, x) == want


@pytest.mark.parametrize("seed", range(5))
def test_example_matrix_random(seed):
    rng = seeded(seed)
    p = random_exact_params(rng, 2)
    x = random_xpoint(rng, 2)
    assert co.d_a(p, x) == co.example_d_a_m2(p, x)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_determinants_closed_forms(m):
    rng = seeded(100 + m)
    for _ in range(10):
        p = random_exact_params(rng, m)
        x = random_xpoint(rng, m)
        al = alphas(p)
        assert co.det_c_check(al)
        assert co.c_matrix(al) == co.c_matrix_from_pairs(al)
        for k in range(m + 2):
            Q = co.q_matrix(al, x, k)
            assert Q == co.q_matrix_from_entries(al, x, k)
            assert linalg.det(Q) == co.det_q_closed(al, x, k)


def test_intersection_number_symmetry_of_basis():
    p = Params.make("2/7", ["1/3", "-5/4"], "9/5")
    al = alphas(p)
    C = co.c_matrix(al)
    assert C == linalg.transpose(C)
    assert co.intersection_number(al, (3, 4), (3, 4)) == 1 / al[3] + 1 / al[4]


def test_xpoint_rejects_degenerate():
    with pytest.raises(DomainError):
        co.XPoint.make(["1/2", "1/2"])
    with pytest.raises(DomainError):
        co.XPoint.make(["1"])
    with pytest.raises(DomainError):
        co.XPoint.make([0])


def test_singular_c_is_reported():
    # alpha_0 = 0 makes C singular
    p = Params.make("1/3", ["1/2", "1/4"], "3/4")
    assert alphas(p)[0] == 0
    with pytest.raises(SingularMatrixError):
        co.d_a(p, co.XPoint.make(["1/5", "1/7"]))


def test_k_independence_of_fk_matrices():
    p = Params.make("1/3", ["1/5", "2/7"], "5/2")
    x = co.XPoint.make(["1/4", "2/3"])
    # D_a^(k) = -D_a / (a - 1)
    Da = co.d_a(p, x)
    assert co.d_a_k(p, x) == linalg.scale(-1 / (p.a - 1), Da)


@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_p_matrix_times_c_is_q(m, seed):
    rng = seeded(seed)
    p = random_exact_params(rng, m)
    x = random_xpoint(rng, m)
    al = alphas(p)
    for k in range(m + 2):
        assert linalg.matmul(co.p_matrix(al, x, k), co.c_matrix(al)) == co.q_matrix(al, x, k)

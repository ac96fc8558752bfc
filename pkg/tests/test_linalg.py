from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lauricella import linalg
from lauricella.errors import DeterminantMismatch, SingularMatrixError

small = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(square))
def test_inverse_exact(M):
    d = linalg.det(M)
    if d == 0:
        with pytest.raises(SingularMatrixError):
            linalg.inverse(M)
        return
    assert linalg.matmul(M, linalg.inverse(M)) == linalg.identity(len(M))


@given(st.integers(1, 4).flatmap(square), st.integers(1, 4).flatmap(square))
def test_det_multiplicative(A, B):
    if len(A) != len(B):
        return
    assert linalg.det(linalg.matmul(A, B)) == linalg.det(A) * linalg.det(B)


def test_float_matches_exact():
    M = [[Fraction(2), Fraction(1, 3)], [Fraction(-1, 2), Fraction(5)]]
    Mf = [[complex(v) for v in row] for row in M]
    assert abs(linalg.det(Mf) - complex(linalg.det(M))) < 1e-14
    inv = linalg.inverse(Mf)
    exact = linalg.inverse(M)
    assert all(abs(inv[i][j] - complex(exact[i][j])) < 1e-14 for i in range(2) for j in range(2))


def test_checked_inverse():
    M = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert linalg.checked_inverse(M, Fraction(-2), "M", "test") == linalg.inverse(M)
    with pytest.raises(DeterminantMismatch):
        linalg.checked_inverse(M, Fraction(5), "M", "test")
    with pytest.raises(SingularMatrixError):
        linalg.checked_inverse(M, 0, "M", "test")

"""Dense linear algebra on small matrices stored as lists of rows.

Entries may be Fractions or complex numbers.  Exact matrices are handled
without rounding (Bareiss determinant, Gauss-Jordan inverse with the first
nonzero pivot); float matrices use partial pivoting.
"""

from fractions import Fraction

from .errors import DeterminantMismatch, SingularMatrixError
from .scalar import is_exact

FLOAT_DET_RTOL = 1e-8


def _exact(M):
    return all(is_exact(v) for row in M for v in row)


def _one(exact):
    return Fraction(1) if exact else complex(1)


def identity(n, exact=True):
    one, zero = _one(exact), _one(exact) * 0
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(A, B):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def scale(s, A):
    return [[s * v for v in row] for row in A]


def add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def det(M):
    """Determinant; Bareiss fraction-free elimination in exact mode."""
    n = len(M)
    A = [list(row) for row in M]
    if _exact(A):
        A = [[Fraction(v) for v in row] for row in A]
        sign, prev = 1, Fraction(1)
        for k in range(n - 1):
            if A[k][k] == 0:
                for r in range(k + 1, n):
                    if A[r][k] != 0:
                        A[k], A[r] = A[r], A[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1] if n else Fraction(1)
    A = [[complex(v) for v in row] for row in A]
    out = complex(1)
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(A[r][k]))
        if A[piv][k] == 0:
            return complex(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            out = -out
        out *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            for j in range(k, n):
                A[i][j] -= f * A[k][j]
    return out


def inverse(M):
    """Gauss-Jordan inverse; raises SingularMatrixError on a zero pivot."""
    n = len(M)
    exact = _exact(M)
    conv = Fraction if exact else complex
    A = [[conv(v) for v in row] + [conv(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for k in range(n):
        if exact:
            piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        else:
            piv = max(range(k, n), key=lambda r: abs(A[r][k]))
            if A[piv][k] == 0:
                piv = None
        if piv is None:
            raise SingularMatrixError("matrix is singular", location="inverse")
        A[k], A[piv] = A[piv], A[k]
        p = A[k][k]
        A[k] = [v / p for v in A[k]]
        for i in range(n):
            if i != k and A[i][k] != 0:
                f = A[i][k]
                A[i] = [vi - f * vk for vi, vk in zip(A[i], A[k])]
    return [row[n:] for row in A]


def checked_inverse(M, closed_det, what="matrix", where=None):
    """Invert M after confirming det(M) against its closed form.

    A zero closed form means the point is singular; any disagreement
    between the two determinants is an internal error.
    """
    if closed_det == 0:
        raise SingularMatrixError(f"{what} is singular (closed-form determinant is 0)",
                                  location=where)
    d = det(M)
    if is_exact(closed_det) and _exact(M):
        if d != closed_det:
            raise DeterminantMismatch(f"det({what}) = {d} but closed form gives {closed_det}",
                                      location=where)
    elif abs(d - closed_det) > FLOAT_DET_RTOL * abs(closed_det):
        raise DeterminantMismatch(f"det({what}) = {d} but closed form gives {closed_det}",
                                  location=where)
    return inverse(M)


def max_abs(A):
    return max(abs(v) for row in A for v in row)


def vec_norm(v):
    return sum(abs(x) ** 2 for x in v) ** 0.5

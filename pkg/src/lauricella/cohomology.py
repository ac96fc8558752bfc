"""Intersection numbers and the matrices built from them.

All intersection values are returned with the common factor 2*pi*i removed.
That factor cancels in every product Q C^{-1} and Q Q^{-1}, so the contiguity
matrices are unaffected and exact rational arithmetic stays possible.  Use
:data:`TWO_PI_I` to restore the true values of C and Q_k.

Index conventions: the points are x_0 = 0, x_1..x_m, x_{m+1} = 1 and the
exponents alpha_0..alpha_{m+2}.  The cocycle phi_{i,j} is addressed by the
pair (i, j); the basis is phi_0 = phi_{m+1,m+2} and phi_k = phi_{m+1,k}.
"""

import cmath
from dataclasses import dataclass

from . import linalg
from .errors import DomainError
from .scalar import Params, alphas, as_scalar, infer_mode, is_exact

TWO_PI_I = 2j * cmath.pi


@dataclass(frozen=True)
class XPoint:
    """Point x = (x_1..x_m); 0, x_1, ..., x_m, 1 must be pairwise distinct."""

    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        pts = self.full
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i] == pts[j]:
                    raise DomainError(
                        f"degenerate point: x_{i} = x_{j} = {pts[i]}",
                        location="XPoint",
                        detail="0, x_1..x_m, 1 must be pairwise distinct",
                    )

    @classmethod
    def make(cls, values, mode=None):
        if mode is None:
            mode = infer_mode(values)
        return cls(tuple(as_scalar(v, mode) for v in values))

    @property
    def m(self):
        return len(self.coords)

    @property
    def full(self):
        """(x_0, x_1, ..., x_m, x_{m+1}) = (0, x_1, ..., x_m, 1)."""
        zero = self.coords[0] * 0
        return (zero, *self.coords, zero + 1)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return len(self.coords)


def _as_x(x):
    return x if isinstance(x, XPoint) else XPoint.make(x)


def _m(al):
    return len(al) - 3


def _kron(i, j):
    return 1 if i == j else 0


def _nonzero(value, name, where):
    if value == 0:
        raise DomainError(f"{name} vanishes", location=where)
    return value


def basis_index(i, m):
    """The pair (i, j) naming the basis cocycle phi_i."""
    return (m + 1, m + 2) if i == 0 else (m + 1, i)


def intersection_number(al, ij, pq):
    """I_c(phi_{i,j}, phi_{p,q}) / (2 pi i)."""
    i, j = ij
    p, q = pq
    out = 0
    for idx, sign in ((i, 1), (j, -1)):
        d = _kron(idx, p) - _kron(idx, q)
        if d:
            out += sign * d / _nonzero(al[idx], f"alpha_{idx}", "intersection_number")
    return out


def c_matrix(al):
    """Intersection matrix C of the basis phi_0..phi_m (2 pi i dropped)."""
    m = _m(al)
    inv = [None] * len(al)
    for i in range(1, m + 3):
        inv[i] = 1 / _nonzero(al[i], f"alpha_{i}", "c_matrix")
    diag = [inv[m + 2]] + [inv[i] for i in range(1, m + 1)]
    return [[inv[m + 1] + (diag[i] if i == j else 0) for j in range(m + 1)] for i in range(m + 1)]


def c_matrix_from_pairs(al):
    """C assembled entry by entry from the general intersection formula."""
    m = _m(al)
    return [[intersection_number(al, basis_index(i, m), basis_index(j, m)) for j in range(m + 1)]
            for i in range(m + 1)]


def _prod(values):
    out = 1
    for v in values:
        out = out * v
    return out


def det_c_closed(al):
    """-alpha_0 / prod_{i=1}^{m+2} alpha_i."""
    return -al[0] / _prod(al[1:])


def det_c_check(al):
    """Compare det C with its closed form (exact, or 1e-10 relative)."""
    if al[0] == 0:
        raise DomainError("alpha_0 = 0: C is singular", location="det_c_check")
    d = linalg.det(c_matrix(al))
    closed = det_c_closed(al)
    if is_exact(d) and is_exact(closed):
        return d == closed
    return abs(d - closed) <= 1e-10 * abs(closed)


def _q_pieces(al, x, k):
    m = _m(al)
    if not 0 <= k <= m + 1:
        raise DomainError(f"k = {k} outside 0..{m + 1}", location="q_matrix")
    xs = x.full
    a_m2 = _nonzero(al[m + 2], f"alpha_{m + 2}", "q_matrix")
    one_minus = _nonzero(1 - al[m + 2], f"1 - alpha_{m + 2}", "q_matrix")
    weighted = sum(al[p] * xs[p] for p in range(1, m + 2))
    return m, xs, a_m2, one_minus, weighted


def q_entry(al, x, k, l, j):
    """I_c((t - x_k) phi_{l,m+2}, phi_j) / (2 pi i), for 0 <= l <= m+1."""
    x = _as_x(x)
    m, xs, a_m2, one_minus, weighted = _q_pieces(al, x, k)
    shift = xs[l] - xs[k]
    if j == 0:
        return shift * (_kron(l, m + 1) / _nonzero(al[m + 1], f"alpha_{m + 1}", "q_entry")
                        + 1 / a_m2) - (weighted / a_m2 + 1) / one_minus
    d = _kron(l, m + 1) - _kron(l, j)
    first = shift * d / _nonzero(al[l], f"alpha_{l}", "q_entry") if d and shift else 0
    return first - (1 - xs[j]) / one_minus


def q_matrix(al, x, k):
    """Q_k = (I_c((t - x_k) phi_i, phi_j))_{i,j} / (2 pi i) in matrix form."""
    x = _as_x(x)
    m, xs, a_m2, one_minus, weighted = _q_pieces(al, x, k)
    xk = xs[k]
    base = (1 - xk) / _nonzero(al[m + 1], f"alpha_{m + 1}", "q_matrix")
    Q = [[base for _ in range(m + 1)] for _ in range(m + 1)]
    Q[0][0] += (1 - xk) / a_m2 - (weighted / a_m2 + 1) / one_minus
    for i in range(1, m + 1):
        Q[i][0] += (1 - xs[i]) / a_m2
        Q[0][i] -= (1 - xs[i]) / one_minus
        Q[i][i] += (xs[i] - xk) / _nonzero(al[i], f"alpha_{i}", "q_matrix")
    return Q


def q_matrix_from_entries(al, x, k):
    """Q_k assembled from q_entry using phi_i = phi_{m+1,m+2} - phi_{i,m+2}."""
    x = _as_x(x)
    m = _m(al)
    rows = []
    for i in range(m + 1):
        row = []
        for j in range(m + 1):
            v = q_entry(al, x, k, m + 1, j)
            if i:
                v -= q_entry(al, x, k, i, j)
            row.append(v)
        rows.append(row)
    return rows


def det_q_closed(al, x, k):
    """Closed-form det Q_k (2 pi i dropped)."""
    x = _as_x(x)
    m = _m(al)
    xs = x.full
    num = al[0] * (1 + (al[0] if k == 0 else 0))
    den = _prod(al[j] for j in range(1, m + 3) if j != k) * (al[m + 2] - 1)
    return num / den * _prod(xs[j] - xs[k] for j in range(m + 2) if j != k)


def _c_inverse(al, where):
    return linalg.checked_inverse(c_matrix(al), det_c_closed(al), "C", where)


def _q_inverse(al, x, k, where):
    return linalg.checked_inverse(q_matrix(al, x, k), det_q_closed(al, x, k), f"Q_{k}", where)


def p_matrix(al, x, k):
    """P_k = Q_k C^{-1}: coefficients of (t - x_k) phi_i in the basis."""
    return linalg.matmul(q_matrix(al, x, k), _c_inverse(al, f"P_{k}"))


def _where(name, p):
    return f"{name} at (a, b, c) = ({p.a}, [{', '.join(map(str, p.b))}], {p.c})"


def d_a(p, x):
    """F(a-1, b, c) = D_a F(a, b, c)."""
    x = _as_x(x)
    m = p.m
    al = alphas(p)
    where = _where("D_a", p)
    pref = (p.a - 1) / _nonzero(p.c - p.a, "c - a", where)
    return linalg.scale(pref, linalg.matmul(q_matrix(al, x, m + 1), _c_inverse(al, where)))


def d_c(p, x):
    """F(a, b, c-1) = D_c F(a, b, c)."""
    x = _as_x(x)
    m = p.m
    where = _where("D_c", p)
    al1 = alphas(p.shifted(da=1))
    pref = (p.c - p.a - 1) / _nonzero(p.c - 1, "c - 1", where)
    return linalg.scale(pref, linalg.matmul(q_matrix(al1, x, 0), _q_inverse(al1, x, m + 1, where)))


def d_bk(p, x, k):
    """F(a, b - e_k, c) = D_k F(a, b, c), 1 <= k <= m."""
    x = _as_x(x)
    if not 1 <= k <= p.m:
        raise DomainError(f"k = {k} outside 1..{p.m}", location="d_bk")
    where = _where(f"D_{k}", p)
    al1 = alphas(p.shifted(da=1, dc=1))
    return linalg.matmul(q_matrix(al1, x, k), _q_inverse(al1, x, 0, where))


def d_a_k(p, x):
    """F^(k)(a-1, b, c) = D_a^(k) F^(k)(a, b, c); the same matrix for every k."""
    x = _as_x(x)
    al = alphas(p)
    where = _where("D_a^(k)", p)
    pref = 1 / _nonzero(p.a - p.c, "a - c", where)
    return linalg.scale(pref, linalg.matmul(q_matrix(al, x, p.m + 1), _c_inverse(al, where)))


def d_c_k(p, x):
    """F^(k)(a, b, c-1) = D_c^(k) F^(k)(a, b, c)."""
    x = _as_x(x)
    where = _where("D_c^(k)", p)
    al1 = alphas(p.shifted(da=1))
    return linalg.scale(p.c - p.a - 1,
                        linalg.matmul(q_matrix(al1, x, 0), _q_inverse(al1, x, p.m + 1, where)))


def d_l_k(p, x, l):
    """F^(k)(a, b - e_l, c) = D_l^(k) F^(k)(a, b, c), 1 <= l <= m."""
    x = _as_x(x)
    if not 1 <= l <= p.m:
        raise DomainError(f"l = {l} outside 1..{p.m}", location="d_l_k")
    where = _where(f"D_{l}^(k)", p)
    al1 = alphas(p.shifted(da=1, dc=1))
    pref = 1 / _nonzero(1 - p.b[l - 1], f"1 - b_{l}", where)
    return linalg.scale(pref, linalg.matmul(q_matrix(al1, x, l), _q_inverse(al1, x, 0, where)))


def example_d_a_m2(p, x):
    """The displayed 3x3 matrix for m = 2 (first contiguity relation)."""
    a, (b1, b2), c = p.a, p.b, p.c
    x1, x2 = x[0], x[1]
    ca = c - a
    return [
        [(-b1 * x1 - b2 * x2 + c - a) / ca, b1 * x1 / ca, b2 * x2 / ca],
        [(a - 1) * (1 - x1) / ca, (a - 1) * (x1 - 1) / ca, 0 * ca],
        [(a - 1) * (1 - x2) / ca, 0 * ca, (a - 1) * (x2 - 1) / ca],
    ]


__all__ = [
    "TWO_PI_I", "XPoint", "Params", "basis_index", "intersection_number", "c_matrix",
    "c_matrix_from_pairs", "det_c_closed", "det_c_check", "q_entry", "q_matrix",
    "q_matrix_from_entries", "det_q_closed", "p_matrix", "d_a", "d_c", "d_bk", "d_a_k",
    "d_c_k", "d_l_k", "example_d_a_m2",
]

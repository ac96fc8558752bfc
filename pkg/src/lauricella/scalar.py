"""Scalars, parameter vectors and the special values everything else uses.

A scalar is either a :class:`fractions.Fraction` (exact mode) or a Python
``complex`` (float mode).  The mode of a computation is the mode of its
inputs; the helpers here convert, parse and serialize both kinds.
"""

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, PoleError

EXACT = "exact"
FLOAT = "float"

# Lanczos approximation, g = 7, nine coefficients.
_LANCZOS_G = 7
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_INT_TOL = 1e-12


def is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def mode_of(*values):
    """Return EXACT if every value (or element of a sequence) is rational."""
    for v in values:
        if isinstance(v, (list, tuple)):
            if mode_of(*v) == FLOAT:
                return FLOAT
        elif not is_exact(v):
            return FLOAT
    return EXACT


def as_scalar(value, mode):
    """Convert ``value`` to the scalar type of ``mode``.

    Strings are parsed with :func:`parse_scalar`.  Floats are refused in
    exact mode so that a binary approximation never leaks into exact work.
    """
    if isinstance(value, str):
        return parse_scalar(value, mode)
    if mode == EXACT:
        if is_exact(value):
            return Fraction(value)
        raise DomainError(f"exact mode requires rational input, got {value!r}")
    if mode == FLOAT:
        return complex(value)
    raise ValueError(f"unknown mode {mode!r}")


def parse_scalar(text, mode):
    """Parse ``"p/q"``, ``"1.25"`` or ``"1+2j"`` into a scalar of ``mode``."""
    text = text.strip()
    if mode == EXACT:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational number: {text!r}") from exc
    try:
        return complex(Fraction(text))
    except (ValueError, ZeroDivisionError):
        try:
            return complex(text.replace(" ", ""))
        except ValueError as exc:
            raise DomainError(f"not a number: {text!r}") from exc


def to_json(value):
    """Rationals become ``"p/q"`` strings, complex values ``[re, im]``."""
    if is_exact(value):
        value = Fraction(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    value = complex(value)
    return [value.real, value.imag]


def from_json(obj, mode=None):
    if isinstance(obj, str):
        return Fraction(obj) if mode in (None, EXACT) else complex(Fraction(obj))
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(obj[0], obj[1])
    if isinstance(obj, int) and mode != FLOAT:
        return Fraction(obj)
    return complex(obj)


def infer_mode(values):
    """EXACT if every value is an int, Fraction or rational string."""
    for v in values:
        if isinstance(v, str):
            try:
                Fraction(v.strip())
            except (ValueError, ZeroDivisionError):
                return FLOAT
        elif not is_exact(v):
            return FLOAT
    return EXACT


def integer_value(z):
    """Return ``z`` as an int if it is an integer (exactly, or to 1e-12 in
    float mode), otherwise None."""
    if is_exact(z):
        z = Fraction(z)
        return z.numerator if z.denominator == 1 else None
    z = complex(z)
    if abs(z.imag) > _INT_TOL:
        return None
    r = round(z.real)
    if abs(z.real - r) <= _INT_TOL * max(1.0, abs(z.real)):
        return int(r)
    return None


def rgamma_int(n):
    """Reciprocal Gamma at an integer: 0 at the poles, else 1/(n-1)!."""
    if n <= 0:
        return Fraction(0)
    return Fraction(1, math.factorial(n - 1))


def gamma_complex(z):
    """Gamma function of a complex argument (Lanczos, reflection for Re z < 1/2)."""
    z = complex(z)
    n = integer_value(z)
    if n is not None and n <= 0:
        raise PoleError(f"Gamma has a pole at {n}", location="gamma_complex")
    if z.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma_complex(1 - z))
    z -= 1
    acc = _LANCZOS_COEF[0]
    for i in range(1, _LANCZOS_G + 2):
        acc += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * acc


def rgamma(z):
    """1/Gamma(z), entire; exactly zero at nonpositive integers.

    Exact inputs must be integers (the value is otherwise irrational).
    """
    n = integer_value(z)
    if is_exact(z):
        if n is None:
            raise DomainError(f"1/Gamma({z}) is not rational", location="rgamma")
        return rgamma_int(n)
    if n is not None:
        return complex(rgamma_int(n)) if n <= 0 else 1 / complex(math.factorial(n - 1))
    return 1 / gamma_complex(z)


def pochhammer(s, n):
    """Rising factorial (s)_n = s (s+1) ... (s+n-1)."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    out = Fraction(1) if is_exact(s) else complex(1)
    for j in range(n):
        out *= s + j
    return out


def cpow(base, exponent):
    """Power with the branch arg(base) in [-pi, pi).

    A base on the negative real axis gets argument -pi, matching the base
    point convention x_k = exp(-pi i) * xi**k used for the Laurent solutions.
    Rational base with integer exponent stays exact.
    """
    if is_exact(base):
        n = integer_value(exponent)
        if n is not None and is_exact(exponent):
            if base == 0 and n < 0:
                raise PoleError("zero to a negative power", location="cpow")
            return Fraction(base) ** n
    base = complex(base)
    exponent = complex(exponent)
    if base == 0:
        if exponent == 0:
            return complex(1)
        raise PoleError("zero to a complex power", location="cpow")
    if base.imag == 0 and base.real < 0:
        log = complex(math.log(-base.real), -math.pi)
    else:
        log = cmath.log(base)
    return cmath.exp(exponent * log)


@dataclass(frozen=True)
class Params:
    """Parameter vector (a, b_1..b_m, c) of F_D."""

    a: object
    b: tuple
    c: object

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.b) < 1:
            raise DomainError("need m >= 1")

    @classmethod
    def make(cls, a, b, c, mode=None):
        """Build Params converting every entry to the scalar type of ``mode``.

        With ``mode=None`` the mode is inferred: exact iff all inputs are
        rational (int, Fraction or a rational string).
        """
        if mode is None:
            mode = infer_mode([a, *b, c])
        return cls(as_scalar(a, mode), tuple(as_scalar(v, mode) for v in b), as_scalar(c, mode))

    @property
    def m(self):
        return len(self.b)

    @property
    def mode(self):
        return mode_of(self.a, self.b, self.c)

    def shifted(self, da=0, db=None, dc=0):
        b = self.b if db is None else tuple(bi + di for bi, di in zip(self.b, db))
        return Params(self.a + da, b, self.c + dc)

    def shifted_b(self, k, delta):
        """Shift b_k (1-based) by delta."""
        b = list(self.b)
        b[k - 1] += delta
        return Params(self.a, tuple(b), self.c)

    def is_integral(self):
        return all(integer_value(v) is not None for v in (self.a, *self.b, self.c))

    def to_json(self):
        return {"a": to_json(self.a), "b": [to_json(v) for v in self.b], "c": to_json(self.c)}


def alphas(p):
    """Exponents (alpha_0, ..., alpha_{m+2}) of the integrand; they sum to 0."""
    return (-p.c + sum(p.b), *(-bk for bk in p.b), p.c - p.a, p.a)


def is_generic(p):
    """True when no exponent alpha_k is an integer."""
    return all(integer_value(al) is None for al in alphas(p))


def integer_mode_ok(p):
    """Nonvanishing conditions needed at integer parameter points.

    Every alpha_0..alpha_{m+2} and 1 - alpha_{m+2} must be nonzero so that
    the intersection matrix and the Q_k matrices are defined and invertible.
    """
    al = alphas(p)
    return all(v != 0 for v in al) and 1 - al[-1] != 0

"""Contiguity steps, parameter-lattice paths and the seeds they start from.

A walk multiplies a seed vector by one step matrix per lattice move.  With
exact parameters and x the result is exact.
"""

import enum
from dataclasses import dataclass
from typing import NamedTuple

from . import cohomology, linalg
from .errors import DomainError, LauricellaError
from .scalar import Params, alphas, integer_mode_ok, to_json
from .series import Truncation, f_vector

F_VARIANT = "F"
FK_VARIANT = "Fk"


class StepKind(enum.Enum):
    A_DOWN = "a-1"
    C_DOWN = "c-1"
    B_DOWN = "b_k-1"
    AC_DIAG = "a-1,c-1"


class Step(NamedTuple):
    kind: StepKind
    index: int = 0

    def apply(self, p):
        """Parameters after this step."""
        if self.kind is StepKind.A_DOWN:
            return p.shifted(da=-1)
        if self.kind is StepKind.C_DOWN:
            return p.shifted(dc=-1)
        if self.kind is StepKind.B_DOWN:
            return p.shifted_b(self.index, -1)
        return p.shifted(da=-1, dc=-1)

    def __str__(self):
        if self.kind is StepKind.B_DOWN:
            return f"b_{self.index}-1"
        return self.kind.value

    @classmethod
    def parse(cls, text):
        text = text.strip().lower().replace(" ", "")
        names = {"a": StepKind.A_DOWN, "a_down": StepKind.A_DOWN, "c": StepKind.C_DOWN,
                 "c_down": StepKind.C_DOWN, "ac": StepKind.AC_DIAG, "ac_diag": StepKind.AC_DIAG}
        if text in names:
            return cls(names[text])
        for prefix in ("b_down_", "b_", "b"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls(StepKind.B_DOWN, int(text[len(prefix):]))
        raise DomainError(f"unknown step {text!r}", detail="use a, c, ac or b<k>")


class StepError(LauricellaError):
    """A step's matrix could not be built at the current lattice point."""


@dataclass(frozen=True)
class ParamPath:
    start: Params
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def target(self):
        p = self.start
        for s in self.steps:
            p = s.apply(p)
        return p

    def points(self):
        """(parameters before the step, step) pairs in order."""
        p = self.start
        for s in self.steps:
            yield p, s
            p = s.apply(p)


def step_matrix(step, p, x, variant=F_VARIANT):
    """Matrix M with vector(target) = M vector(p) for the given variant.

    For AC_DIAG the F variant is (a-1)/(c-1) P_0 and the Fk variant is -P_0,
    where P_0 = Q_0 C^{-1}.
    """
    kind = step.kind
    if variant == F_VARIANT:
        if kind is StepKind.A_DOWN:
            return cohomology.d_a(p, x)
        if kind is StepKind.C_DOWN:
            return cohomology.d_c(p, x)
        if kind is StepKind.B_DOWN:
            return cohomology.d_bk(p, x, step.index)
        if p.c == 1:
            raise DomainError("c = 1: (a-1)/(c-1) undefined", location=f"AC_DIAG at {p}")
        return linalg.scale((p.a - 1) / (p.c - 1), cohomology.p_matrix(alphas(p), x, 0))
    if variant == FK_VARIANT:
        if kind is StepKind.A_DOWN:
            return cohomology.d_a_k(p, x)
        if kind is StepKind.C_DOWN:
            return cohomology.d_c_k(p, x)
        if kind is StepKind.B_DOWN:
            return cohomology.d_l_k(p, x, step.index)
        return linalg.scale(-1, cohomology.p_matrix(alphas(p), x, 0))
    raise DomainError(f"unknown variant {variant!r}")


def seed_vector_b0(p, x):
    """F(-1, b, c; x) from the closed form 1 - sum b_i x_i / c."""
    if p.a != -1:
        raise DomainError(f"seed needs a = -1, got a = {p.a}", location="seed_vector_b0")
    if p.c == 0:
        raise DomainError("c = 0", location="seed_vector_b0")
    x = tuple(x)
    value = 1 - sum(bi * xi for bi, xi in zip(p.b, x)) / p.c
    return [value] + [(xi - 1) / p.c for xi in x]


def integer_params(beta1, gamma):
    """(a, b, c) = (-beta_1, (-gamma_1..-gamma_m), gamma_0 - beta_1 + 1)."""
    return Params.make(-beta1, [-g for g in gamma[1:]], gamma[0] - beta1 + 1)


def window_start(gamma, k):
    """Smallest beta_1 in class k >= 1: sum_{i<k} gamma_i + 1."""
    return sum(gamma[:k]) + 1


def seed_vector_bk(gamma, k, x):
    """Exact F^(k) at the bottom of the class-k window of beta_1."""
    p = integer_params(window_start(gamma, k), gamma)
    return f_vector(p, tuple(x), Truncation(), which=k)


def plan(beta1, gamma, k):
    """Seed parameters and the lattice path to the integer point of (beta, gamma).

    Class 0 walks a -> a-1 at fixed c from a = -1; class k >= 1 walks the
    diagonal (a, c) -> (a-1, c-1) from the bottom of the window.
    """
    target = integer_params(beta1, gamma)
    if k == 0:
        start = Params(target.a * 0 - 1, target.b, target.c)
        steps = [Step(StepKind.A_DOWN)] * (beta1 - 1)
    else:
        b0 = window_start(gamma, k)
        if not b0 <= beta1 <= sum(gamma[: k + 1]):
            raise DomainError(f"beta_1 = {beta1} not in the class-{k} window", location="plan")
        start = integer_params(b0, gamma)
        steps = [Step(StepKind.AC_DIAG)] * (beta1 - b0)
    path = ParamPath(start, steps)
    assert path.target == target
    return path


def walk(path, seed, x, variant=F_VARIANT, report=None, integer=False):
    """Push ``seed`` along ``path``; returns the vector at ``path.target``.

    With ``integer=True`` every intermediate point must satisfy the
    nonvanishing conditions on the exponents.  ``report`` (a list) receives one
    dict per step.
    """
    vec = list(seed)
    m = path.start.m
    if len(vec) != m + 1:
        raise DomainError("seed length must be m + 1", location="walk")
    for i, (p, step) in enumerate(path.points()):
        where = f"step {i} ({step}) at (a, b, c) = ({p.a}, [{', '.join(map(str, p.b))}], {p.c})"
        if integer and not integer_mode_ok(p):
            raise StepError("exponent vanishes at an integer point", location=where,
                            detail=[str(v) for v in alphas(p)])
        try:
            M = step_matrix(step, p, x, variant)
        except LauricellaError as exc:
            raise StepError(str(exc), location=where, detail=exc.location) from exc
        vec = linalg.matvec(M, vec)
        if report is not None:
            report.append({"step": str(step), "from": p.to_json(),
                           "det_C": to_json(cohomology.det_c_closed(alphas(p)))})
    return vec

"""Lauricella F_D: contiguity relations from intersection numbers, the Laurent
solutions f^(k), and the normalizing constant of 2 x (m+1) contingency tables."""

from .cohomology import XPoint, c_matrix, d_a, d_a_k, d_bk, d_c, d_c_k, d_l_k, q_matrix
from .contiguity import ParamPath, Step, StepKind, plan, walk
from .errors import (BranchError, DeterminantMismatch, DomainError, LauricellaError, PoleError,
                     SingularMatrixError)
from .scalar import Params, alphas
from .series import Truncation, f_vector, fd_series, fk_series
from .tables import Marginals, z_bruteforce, z_hgm

__version__ = "0.1.0"

__all__ = [
    "XPoint", "c_matrix", "q_matrix", "d_a", "d_c", "d_bk", "d_a_k", "d_c_k", "d_l_k",
    "ParamPath", "Step", "StepKind", "plan", "walk", "BranchError", "DeterminantMismatch",
    "DomainError", "LauricellaError", "PoleError", "SingularMatrixError", "Params", "alphas",
    "Truncation", "f_vector", "fd_series", "fk_series", "Marginals", "z_bruteforce", "z_hgm",
]

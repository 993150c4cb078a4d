"""Rankin-Cohen brackets, holographic operators and weighted Bergman kernels on
the upper half-plane, with quadrature-backed certification of their identities."""
from ._accel import BACKEND
from .errors import DomainError, NonConvergenceError, UnsupportedExpression
from .expr import ExpAtom, HoloExpr, L2Expr, Monomial, ShiftedPower
from .kernels import (
    WeightTriple,
    bergman_kernel,
    kernel_derivative,
    kernel_inverse_laplace,
    product_kernel,
    rc_of_product_kernel,
    relative_kernel,
)
from .numerics import DEFAULT_SPEC, QuadratureSpec, UHPoint, principal_power
from .operators import GroupElement, moebius_action, psi_apply, rc_adjoint_apply, rc_apply

from .report import VerificationReport
from .special import hyp1f1, jacobi

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_SPEC",
    "DomainError",
    "ExpAtom",
    "GroupElement",
    "HoloExpr",
    "L2Expr",
    "Monomial",
    "NonConvergenceError",
    "QuadratureSpec",
    "ShiftedPower",
    "UHPoint",
    "UnsupportedExpression",
    "VerificationReport",
    "WeightTriple",
    "bergman_kernel",
    "hyp1f1",
    "jacobi",
    "kernel_derivative",
    "kernel_inverse_laplace",
    "moebius_action",
    "principal_power",
    "product_kernel",
    "psi_apply",
    "rc_adjoint_apply",
    "rc_apply",
    "rc_of_product_kernel",
    "relative_kernel",
]

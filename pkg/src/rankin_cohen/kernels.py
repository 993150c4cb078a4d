"""Weighted Bergman kernels on the upper half-plane and their relatives.

Conventions: inner products are linear in the first slot, conjugate-linear
in the second, and ``K_lam(z, w) = (lam - 1)/(4 pi) ((z - conj w)/2i)^{-lam}``
reproduces ``H^2_lam`` for the measure ``y^{lam-2} dx dy``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .numerics import as_uhp, principal_power, two_i_pow
from .special import beta_fn, pochhammer

__all__ = [
    "WeightTriple",
    "bergman_kernel",
    "product_kernel",
    "kernel_derivative",
    "relative_kernel",
    "kernel_inverse_laplace",
    "kernel_inverse_laplace2",
    "rc_coefficients",
    "rc_of_product_kernel",
    "rc_of_product_kernel_leibniz",
    "adjoint_constant",
    "psi_link_constant",
    "psi_kernel_constant",
    "kummer_route_constant",
]


@dataclass(frozen=True)
class WeightTriple:
    """Weights ``(lam1, lam2, lam3)`` with ``l = (lam3 - lam1 - lam2)/2`` in N.

    ``l`` is recomputed on construction; passing it explicitly only adds a
    consistency check.
    """

    lambda1: float
    lambda2: float
    lambda3: float
    l: int = field(default=None)

    def __post_init__(self):
        lams = (self.lambda1, self.lambda2, self.lambda3)
        if not all(lam > 1 for lam in lams):
            raise DomainError(f"all weights must exceed 1, got {lams}")
        half = 0.5 * (self.lambda3 - self.lambda1 - self.lambda2)
        l = round(half)
        if abs(half - l) > 1e-9 or l < 0:
            raise DomainError(f"(lam3 - lam1 - lam2)/2 = {half} is not a non-negative integer")
        if self.l is not None and self.l != l:
            raise DomainError(f"given l = {self.l} but the weights imply l = {l}")
        object.__setattr__(self, "l", int(l))

    @classmethod
    def from_l(cls, lambda1, lambda2, l):
        return cls(lambda1, lambda2, lambda1 + lambda2 + 2 * l)

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3)

    def __str__(self):
        return f"({self.lambda1:g},{self.lambda2:g},{self.lambda3:g})"


def _shift(z, w):
    # (z - conj w) / 2i, which has real part (Im z + Im w)/2
    return (z - np.conj(w)) / 2j


def bergman_kernel(lam, z, w):
    if not lam > 1:
        raise DomainError(f"weight must exceed 1, got {lam}")
    z, w = as_uhp(z), as_uhp(w)
    return (lam - 1.0) / (4.0 * math.pi) * principal_power(_shift(z, w), -lam)


def product_kernel(tw: WeightTriple, z1, z2, w1, w2):
    return bergman_kernel(tw.lambda1, z1, w1) * bergman_kernel(tw.lambda2, z2, w2)


def kernel_derivative(lam, l: int, z, w):
    """``d^l/dz^l K_lam(z, w)`` in closed form."""
    if not lam > 1:
        raise DomainError(f"weight must exceed 1, got {lam}")
    z, w = as_uhp(z), as_uhp(w)
    coef = (-1) ** l * pochhammer(lam - 1.0, l + 1) / (4.0 * math.pi * two_i_pow(l))
    return coef * principal_power(_shift(z, w), -(lam + l))


def relative_kernel(tw: WeightTriple, z, w1, w2):
    """``(w2 - w1)^l ((w1 - conj z)/2i)^{-(lam1+l)} ((w2 - conj z)/2i)^{-(lam2+l)}``."""
    z, w1, w2 = as_uhp(z), as_uhp(w1), as_uhp(w2)
    l = tw.l
    return (
        (w2 - w1) ** l
        * principal_power(_shift(w1, z), -(tw.lambda1 + l))
        * principal_power(_shift(w2, z), -(tw.lambda2 + l))
    )


def kernel_inverse_laplace(lam, z, t):
    """The function of ``t > 0`` whose Laplace transform is ``K_lam(., z)``."""
    if not lam > 1:
        raise DomainError(f"weight must exceed 1, got {lam}")
    z = as_uhp(z)
    t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
    if np.any(np.asarray(t) < 0):
        raise DomainError("t must be non-negative")
    coef = 2.0 ** (lam - 1.0) / (2.0 * math.pi * math.gamma(lam - 1.0))
    return coef * t ** (lam - 1.0) * np.exp(-1j * t * np.conj(z))


def kernel_inverse_laplace2(tw: WeightTriple, w1, w2, x, y):
    """Two-variable version: preimage of ``K_{lam1,lam2}(., (w1, w2))``."""
    return kernel_inverse_laplace(tw.lambda1, w1, x) * kernel_inverse_laplace(tw.lambda2, w2, y)


# -- Rankin-Cohen on product kernels --------------------------------------------

def rc_coefficients(tw: WeightTriple):
    """Coefficients ``a_j`` of ``d^l / dz1^{l-j} dz2^j``, j = 0..l."""
    l, lam1, lam2 = tw.l, tw.lambda1, tw.lambda2
    return [
        (-1) ** j * pochhammer(lam1 + l - j, j) * pochhammer(lam2 + j, l - j)
        / (math.factorial(j) * math.factorial(l - j))
        for j in range(l + 1)
    ]


def rc_of_product_kernel(tw: WeightTriple, z, w1, w2):
    """``conj(RC[K_{lam1,lam2}(., (w1, w2))](z))`` in closed form.

    Equals ``(lam1-1)_{l+1} (lam2-1)_{l+1} / ((4 pi)^2 l! 4^l)`` times
    ``(w1 - w2)^l ((w1 - conj z)/2i)^{-(lam1+l)} ((w2 - conj z)/2i)^{-(lam2+l)}``,
    i.e. ``(-1)^l adjoint_constant(tw) relative_kernel(tw, z, w1, w2)``.
    """
    l = tw.l
    z, w1, w2 = as_uhp(z), as_uhp(w1), as_uhp(w2)
    const = (
        pochhammer(tw.lambda1 - 1.0, l + 1) * pochhammer(tw.lambda2 - 1.0, l + 1)
        / ((4.0 * math.pi) ** 2 * math.factorial(l) * 4.0 ** l)
    )
    return (
        const
        * (w1 - w2) ** l
        * principal_power(_shift(w1, z), -(tw.lambda1 + l))
        * principal_power(_shift(w2, z), -(tw.lambda2 + l))
    )


def rc_of_product_kernel_leibniz(tw: WeightTriple, z, w1, w2):
    """Same quantity as :func:`rc_of_product_kernel`, summed term by term.

    Each mixed partial of the product kernel factorises into two
    :func:`kernel_derivative` values taken on the diagonal.
    """
    l = tw.l
    total = 0j
    for j, a in enumerate(rc_coefficients(tw)):
        total = total + a * kernel_derivative(tw.lambda1, l - j, z, w1) * kernel_derivative(tw.lambda2, j, z, w2)
    return np.conj(total)


# -- constants ------------------------------------------------------------------

def adjoint_constant(tw: WeightTriple) -> float:
    """``C(lam1, lam2) = (lam1-1)_{l+1} (lam2-1)_{l+1} / (2^{2l+4} pi^2 l!)``."""
    l = tw.l
    return (
        pochhammer(tw.lambda1 - 1.0, l + 1) * pochhammer(tw.lambda2 - 1.0, l + 1)
        / (2.0 ** (2 * l + 4) * math.pi ** 2 * math.factorial(l))
    )


def psi_link_constant(tw: WeightTriple) -> float:
    """``C`` with ``RC^* = C Psi``: ``Gamma(lam1+lam2+2l-1) / (2^{2l+2} pi Gamma(lam1-1) Gamma(lam2-1))``."""
    l = tw.l
    return math.gamma(tw.lambda1 + tw.lambda2 + 2 * l - 1.0) / (
        2.0 ** (2 * l + 2) * math.pi * math.gamma(tw.lambda1 - 1.0) * math.gamma(tw.lambda2 - 1.0)
    )


def psi_kernel_constant(tw: WeightTriple) -> float:
    """``Psi(K_lam3(., z)) = const * relative_kernel``: ``(-1)^l (lam3-1) B(lam1+l, lam2+l) / (4 pi l!)``."""
    l = tw.l
    return (-1) ** l * (tw.lambda3 - 1.0) * beta_fn(tw.lambda1 + l, tw.lambda2 + l) / (4.0 * math.pi * math.factorial(l))


def kummer_route_constant(tw: WeightTriple) -> float:
    """``Gamma(lam1+lam2+2l-1) B(lam1+l, lam2+l) / (2^{2l+2} pi l! Gamma(lam1-1) Gamma(lam2-1))``."""
    l = tw.l
    return psi_link_constant(tw) * beta_fn(tw.lambda1 + l, tw.lambda2 + l) / math.factorial(l)


"""Gamma/Beta/Pochhammer, Jacobi polynomials and the Kummer function 1F1."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import DomainError, NonConvergenceError
from .numerics import DEFAULT_SPEC, QuadratureSpec, i_pow, quad_segment

__all__ = [
    "pochhammer",
    "gamma_fn",
    "beta_fn",
    "JacobiParams",
    "jacobi",
    "jacobi_poly",
    "jacobi_norm_sq",
    "KummerParams",
    "hyp1f1",
    "kummer_1f1",
    "kummer_integral_identity_residual",
]


def pochhammer(lam, n: int):
    """Rising factorial ``lam (lam + 1) ... (lam + n - 1)``; 1 for n = 0."""
    if n < 0 or int(n) != n:
        raise ValueError(f"pochhammer needs a non-negative integer n, got {n}")
    out = 1.0 if isinstance(lam, (int, float, np.floating, np.integer)) else 1.0 + 0j
    for k in range(int(n)):
        out *= lam + k
    return out


def gamma_fn(x: float) -> float:
    if not x > 0:
        raise DomainError(f"gamma_fn is restricted to x > 0, got {x}")
    return math.gamma(x)


def beta_fn(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise DomainError(f"beta_fn is restricted to positive arguments, got ({x}, {y})")
    if x + y < 170.0:
        return math.gamma(x) * math.gamma(y) / math.gamma(x + y)
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


# -- Jacobi polynomials ---------------------------------------------------------

@dataclass(frozen=True)
class JacobiParams:
    """Degree ``l`` and parameters of ``P_l^{(alpha, beta)}``.

    The orthogonality weight is ``(1 - v)**alpha (1 + v)**beta``.
    """

    l: int
    alpha: float
    beta: float

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"degree must be a non-negative integer, got {self.l}")
        if not (self.alpha > 0 and self.beta > 0):
            raise DomainError(f"alpha, beta must be > 0, got ({self.alpha}, {self.beta})")


def jacobi(l: int, a: float, b: float, v):
    """``P_l^{(a,b)}(v)`` for any a, b > -1 (scalar or array ``v``)."""
    scalar = np.ndim(v) == 0
    x = np.atleast_1d(np.asarray(v, dtype=float))
    vals = _accel.jacobi_table(int(l), float(a), float(b), x.ravel())[int(l)].reshape(x.shape)
    return float(vals[0]) if scalar else vals


def jacobi_poly(p: JacobiParams, v):
    return jacobi(p.l, p.alpha, p.beta, v)


def jacobi_norm_sq(p: JacobiParams) -> float:
    """Squared norm of ``P_l^{(alpha,beta)}`` in ``L^2((1-v)^alpha (1+v)^beta dv)``."""
    l, a, b = int(p.l), p.alpha, p.beta
    if l + a + b < 160:
        return (
            2.0 ** (a + b + 1.0) * math.gamma(l + a + 1.0) * math.gamma(l + b + 1.0)
            / (math.factorial(l) * (2 * l + a + b + 1.0) * math.gamma(l + a + b + 1.0))
        )
    return math.exp(
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(l + a + 1.0)
        + math.lgamma(l + b + 1.0)
        - math.lgamma(l + 1.0)
        - math.log(2 * l + a + b + 1.0)
        - math.lgamma(l + a + b + 1.0)
    )


# -- Kummer function --------------------------------------------------------------

@dataclass(frozen=True)
class KummerParams:
    a: complex
    b: complex
    x: complex

    def __post_init__(self):
        b = complex(self.b)
        if b.imag == 0 and b.real <= 0 and b.real == int(b.real):
            raise DomainError(f"1F1 is undefined for b = {self.b}")


# above this |x| the alternating series loses too many digits
SERIES_RADIUS = 12.0


def _integral_applicable(a, b):
    a, b = complex(a), complex(b)
    return a.imag == 0 and b.imag == 0 and b.real > a.real > 0


def _hyp1f1_integral(a, c, x, spec):
    # 1F1(a; c; x) = 1 / (B(a, c-a) 2^{c-1}) int e^{x(1-v)/2} (1-v)^{a-1} (1+v)^{c-a-1} dv
    # the integrand stays bounded by 1 when Re x <= 0
    a, c = float(np.real(a)), float(np.real(c))
    x = np.asarray(x, dtype=complex)
    span = float(np.max(np.abs(x))) if x.size else 0.0
    nodes = max(int(spec.segment_nodes), int(math.ceil(0.25 * span)) + 32)
    integral = quad_segment(lambda v: np.exp(0.5 * x[..., None] * (1.0 - v)), a, c - a, spec, nodes=nodes)
    return integral / (beta_fn(a, c - a) * 2.0 ** (c - 1.0))


def hyp1f1(a, b, x, method: str = "auto", spec: QuadratureSpec = DEFAULT_SPEC):
    """Vectorised 1F1(a; b; x).

    ``method``: ``"series"`` (raw Maclaurin sum, term-ratio stopping),
    ``"integral"`` (Euler integral, real ``b > a > 0`` only) or ``"auto"``
    (series inside ``|x| <= SERIES_RADIUS``, after Kummer's transformation
    when ``Re x < 0``; integral outside when applicable).
    """
    KummerParams(a, b, 0)
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=complex)).ravel()
    out = np.empty(xs.shape, dtype=complex)
    if method == "series":
        use_int = np.zeros(xs.shape, dtype=bool)
    elif method == "integral":
        if not _integral_applicable(a, b):
            raise DomainError("integral route needs real b > a > 0")
        use_int = np.ones(xs.shape, dtype=bool)
    elif method == "auto":
        use_int = (np.abs(xs) > SERIES_RADIUS) & _integral_applicable(a, b)
    else:
        raise ValueError(f"unknown method {method!r}")
    if (~use_int).any():
        xr = xs[~use_int]
        # Kummer's transformation keeps Re x >= 0, where the terms do not cancel
        flip = (xr.real < 0) if method == "auto" else np.zeros(xr.shape, dtype=bool)
        vals = np.empty(xr.shape, dtype=complex)
        ok = np.ones(xr.shape, dtype=bool)
        if (~flip).any():
            vals[~flip], ok[~flip] = _accel.kummer_series(complex(a), complex(b), xr[~flip])
        if flip.any():
            v, ok[flip] = _accel.kummer_series(complex(b - a), complex(b), -xr[flip])
            vals[flip] = np.exp(xr[flip]) * v
        if not ok.all():
            raise NonConvergenceError(f"1F1 series did not settle for a={a}, b={b}", estimate=vals)
        out[~use_int] = vals
    if use_int.any():
        out[use_int] = _hyp1f1_integral(a, b, xs[use_int], spec)
    if scalar:
        return complex(out[0])
    return out.reshape(np.shape(x))


def kummer_1f1(p: KummerParams, method: str = "auto", spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    return hyp1f1(p.a, p.b, p.x, method=method, spec=spec)


def kummer_integral_identity_residual(alpha, beta, l, x, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Relative gap between the two sides of the Jacobi/Kummer integral formula.

    Left: ``C x^l e^{ix} 1F1(alpha+l; alpha+beta+2l; -2ix)`` with
    ``C = 2^{alpha+beta+l-1} i^l B(alpha+l, beta+l) / l!``, the 1F1 taken from
    its power series.  Right: Gauss-Jacobi quadrature of
    ``P_l^{(alpha-1, beta-1)}(v) e^{ivx}`` against
    ``(1-v)^{alpha-1} (1+v)^{beta-1}``.
    """
    l = int(l)
    const = 2.0 ** (alpha + beta + l - 1.0) * i_pow(l) * beta_fn(alpha + l, beta + l) / math.factorial(l)
    lhs = const * x ** l * np.exp(1j * x) * hyp1f1(alpha + l, alpha + beta + 2 * l, -2j * x, method="series")
    rhs = quad_segment(lambda v: jacobi(l, alpha - 1.0, beta - 1.0, v) * np.exp(1j * v * x), alpha, beta, spec)
    denom = abs(lhs) + abs(rhs)
    return 0.0 if denom == 0 else abs(lhs - rhs) / denom

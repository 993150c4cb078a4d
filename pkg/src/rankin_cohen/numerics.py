"""Branch-safe complex powers and fixed-node quadrature.

Three rules are provided, one per domain that shows up in the operator
formulas:

* ``quad_segment``: Gauss-Jacobi on (-1, 1) for the measure
  ``(1 - v)**(alpha - 1) * (1 + v)**(beta - 1) dv``.  Note the shift by one:
  callers pass the *measure* exponents plus one, matching the way the
  Beta integral ``B(alpha, beta)`` is written.
* ``quad_halfline``: double-exponential (exp-sinh) trapezoid on (0, inf).
* ``quad_plane``: the upper half-plane pulled back to the unit disk by the
  Cayley map, Gauss-Jacobi in ``|zeta|**2`` times the periodic trapezoid rule
  in the angle.

Every rule runs at the requested node count and at double that count and
raises :class:`NonConvergenceError` if the two disagree by more than
``target_tol`` relative to the L1 mass of the integrand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DomainError, NonConvergenceError

__all__ = [
    "UHPoint",
    "QuadratureSpec",
    "DEFAULT_SPEC",
    "BranchPower",
    "principal_power",
    "i_pow",
    "two_i_pow",
    "as_uhp",
    "gauss_jacobi",
    "quad_segment",
    "quad_halfline",
    "quad_plane",
    "cauchy_derivative",
]


@dataclass(frozen=True)
class UHPoint:
    """A point of the upper half-plane."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise DomainError(f"non-finite point ({self.re}, {self.im})")
        if self.im <= 0:
            raise DomainError(f"imaginary part must be > 0, got {self.im}")

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)

    @property
    def z(self) -> complex:
        return complex(self.re, self.im)


def as_uhp(z):
    """Coerce a UHPoint, complex scalar or complex array; require Im > 0."""
    if isinstance(z, UHPoint):
        return z.z
    if np.ndim(z) == 0:
        z = complex(z)
        if not z.imag > 0:
            raise DomainError(f"point {z} is not in the upper half-plane")
        return z
    z = np.asarray(z, dtype=complex)
    if not np.all(z.imag > 0):
        raise DomainError("some points are not in the upper half-plane")
    return z


@dataclass(frozen=True)
class QuadratureSpec:
    segment_nodes: int = 64
    halfline_nodes: int = 512
    plane_radial_nodes: int = 64
    plane_angular_nodes: int = 128
    truncation: float = 400.0
    target_tol: float = 1e-10

    def __post_init__(self):
        for name in ("segment_nodes", "halfline_nodes", "plane_radial_nodes", "plane_angular_nodes"):
            if int(getattr(self, name)) < 2:
                raise ValueError(f"{name} must be >= 2")
        if not self.truncation > 0:
            raise ValueError("truncation must be > 0")
        if not self.target_tol > 0:
            raise ValueError("target_tol must be > 0")

    def with_(self, **changes) -> "QuadratureSpec":
        return replace(self, **changes)


DEFAULT_SPEC = QuadratureSpec()


# -- powers -------------------------------------------------------------------

def principal_power(base, exponent):
    """``base ** exponent`` with the principal logarithm.

    Only defined for ``Re(base) > 0``.  For ``z, w`` in the upper half-plane
    ``Re((z - conj(w)) / 2i) = (Im z + Im w) / 2``, so every kernel argument
    qualifies.
    """
    if np.ndim(base) == 0:
        base = complex(base)
        if not base.real > 0:
            raise DomainError(f"principal_power needs Re(base) > 0, got {base}")
        if base == 1:
            return 1.0 + 0j
        return complex(np.exp(exponent * np.log(base)))
    base = np.asarray(base, dtype=complex)
    if not np.all(base.real > 0):
        raise DomainError("principal_power needs Re(base) > 0")
    return np.exp(exponent * np.log(base))


@dataclass(frozen=True)
class BranchPower:
    base: complex
    exponent: float

    def __post_init__(self):
        if not complex(self.base).real > 0:
            raise DomainError(f"Re(base) must be > 0, got {self.base}")

    def value(self) -> complex:
        return principal_power(self.base, self.exponent)


_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


def i_pow(n: int) -> complex:
    """``1j ** n`` by quadrant rotation (exact)."""
    return _I_POWERS[int(n) % 4]


def two_i_pow(n: int) -> complex:
    """``(2j) ** n`` without going through a logarithm."""
    return float(2 ** int(n)) * i_pow(n) if n >= 0 else i_pow(n) / float(2 ** -int(n))


# -- Gauss-Jacobi -------------------------------------------------------------

@lru_cache(maxsize=512)
def _gauss_jacobi_cached(n, a, b):
    k = np.arange(1, n, dtype=float)
    ab = a + b
    diag = np.empty(n)
    diag[0] = (b - a) / (ab + 2.0)
    kk = np.arange(1, n, dtype=float)
    diag[1:] = (b * b - a * a) / ((2 * kk + ab) * (2 * kk + ab + 2.0))
    off_sq = np.empty(n - 1)
    if n > 1:
        off_sq[0] = 4.0 * (1 + a) * (1 + b) / ((2 + ab) ** 2 * (3 + ab))
        k = k[1:]
        c = 2 * k + ab
        off_sq[1:] = 4.0 * k * (k + a) * (k + b) * (k + ab) / (c * c * (c + 1.0) * (c - 1.0))
    nodes, vecs = eigh_tridiagonal(diag, np.sqrt(off_sq))
    log_mu0 = (ab + 1.0) * math.log(2.0) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(ab + 2)
    weights = math.exp(log_mu0) * vecs[0, :] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi(n: int, a: float, b: float):
    """Nodes and weights for ``(1 - v)**a (1 + v)**b`` on (-1, 1), a, b > -1.

    Golub-Welsch: eigen-decomposition of the symmetric Jacobi matrix built
    from the three-term recurrence of the monic polynomials.
    """
    if n < 1:
        raise ValueError("need at least one node")
    if not (a > -1 and b > -1):
        raise DomainError(f"Jacobi exponents must exceed -1, got ({a}, {b})")
    return _gauss_jacobi_cached(int(n), float(a), float(b))


# -- convergence bookkeeping --------------------------------------------------

def _finish(coarse, fine, mass, tol, what):
    if not (np.all(np.isfinite(fine)) and np.all(np.isfinite(coarse))):
        raise NonConvergenceError(f"{what}: non-finite result", estimate=fine, discrepancy=math.inf)
    err = np.abs(fine - coarse)
    # batched integrands (nested quadrature) share one scale
    scale = np.max(mass) if np.ndim(mass) else mass
    if np.any(err > tol * scale):
        raise NonConvergenceError(
            f"{what}: doubling the nodes moved the result by {np.max(err):.3e} "
            f"(allowed {tol * scale:.3e})",
            estimate=fine,
            discrepancy=float(np.max(err)),
        )
    return complex(fine) if np.ndim(fine) == 0 else fine


def _weighted_sum(values, weights):
    values = np.asarray(values, dtype=complex)
    if values.shape[-1:] != weights.shape:
        values = np.broadcast_to(values, values.shape[:-1] + weights.shape) if values.ndim else np.full(weights.shape, values)
    return values @ weights, np.abs(values) @ np.abs(weights)


# -- segment ------------------------------------------------------------------

def _segment_once(f, alpha, beta, n):
    x, w = gauss_jacobi(n, alpha - 1.0, beta - 1.0)
    return _weighted_sum(f(x), w)


def quad_segment(f, alpha, beta, spec: QuadratureSpec = DEFAULT_SPEC, nodes: int | None = None):
    """``int_{-1}^{1} f(v) (1 - v)**(alpha - 1) (1 + v)**(beta - 1) dv``.

    ``f`` is called once per rule with the node array and may return extra
    leading axes (one integral per leading index, nodes on the last axis).
    """
    if not (alpha > 0 and beta > 0):
        raise DomainError(f"segment weight needs alpha, beta > 0, got ({alpha}, {beta})")
    n = int(nodes or spec.segment_nodes)
    coarse, _ = _segment_once(f, alpha, beta, n)
    fine, mass = _segment_once(f, alpha, beta, 2 * n)
    return _finish(coarse, fine, mass, spec.target_tol, "quad_segment")


# -- half-line ----------------------------------------------------------------

_S_LOW = -math.asinh(2.0 * 700.0 / math.pi)  # t ~ 1e-304


def _halfline_rule(n, truncation):
    s_hi = math.asinh(2.0 * math.log(max(truncation, 1.5)) / math.pi)
    s = np.linspace(_S_LOW, s_hi, n)
    h = s[1] - s[0]
    t = np.exp(0.5 * math.pi * np.sinh(s))
    w = h * 0.5 * math.pi * np.cosh(s) * t
    return t, w


def quad_halfline(f, weight_exp: float = 0.0, spec: QuadratureSpec = DEFAULT_SPEC):
    """``int_0^inf f(t) t**weight_exp dt`` by the exp-sinh rule.

    Nodes ``t = exp(pi/2 sinh s)`` on an equispaced ``s`` grid whose upper
    end is ``spec.truncation``; integrable endpoint singularities at 0 and
    exponential decay are both absorbed by the map.
    """
    n = int(spec.halfline_nodes)

    def once(m):
        t, w = _halfline_rule(m, spec.truncation)
        vals = np.asarray(f(t), dtype=complex)
        with np.errstate(over="ignore", invalid="ignore"):
            scaled = vals * t ** weight_exp
        # an integrand that underflowed to 0 stays 0 however singular the weight
        scaled = np.where(vals == 0, 0.0, scaled)
        return _weighted_sum(scaled, w)

    coarse, _ = once(n)
    fine, mass = once(2 * n - 1)
    return _finish(coarse, fine, mass, spec.target_tol, "quad_halfline")


# -- upper half-plane ---------------------------------------------------------

def _plane_once(f, lam, nr, na):
    v, wv = gauss_jacobi(nr, lam - 2.0, 0.0)
    s = 0.5 * (1.0 + v)
    ws = wv / 2.0 ** (lam - 1.0)
    theta = 2.0 * math.pi * (np.arange(na) + 0.5) / na
    zeta = np.sqrt(s)[:, None] * np.exp(1j * theta)[None, :]
    one_minus = 1.0 - zeta
    z = 1j * (1.0 + zeta) / one_minus
    # dx dy = 4 |1 - zeta|^-4 dA, y^(lam-2) = (1 - |zeta|^2)^(lam-2) |1 - zeta|^(4 - 2 lam)
    jac = 4.0 * np.abs(one_minus) ** (-2.0 * lam)
    vals = np.asarray(f(z), dtype=complex) * jac
    cell = ws[:, None] * (math.pi / na)
    return np.sum(vals * cell), np.sum(np.abs(vals) * cell)


def quad_plane(f, lam: float, spec: QuadratureSpec = DEFAULT_SPEC):
    """``int_Pi f(z) y**(lam - 2) dx dy`` over the upper half-plane.

    The Cayley map ``z = i (1 + zeta) / (1 - zeta)`` turns the weight into
    ``(1 - |zeta|^2)**(lam - 2)`` times ``|1 - zeta|**(-2 lam)``; for
    integrands built from kernels of total weight ``lam`` the second factor
    cancels the decay at infinity and the disk integrand is real-analytic,
    so the product rule converges geometrically.  Integrands decaying more
    slowly than that show up as a failed doubling check.
    """
    if not lam > 1:
        raise DomainError(f"plane weight needs lam > 1, got {lam}")
    nr, na = int(spec.plane_radial_nodes), int(spec.plane_angular_nodes)
    coarse, _ = _plane_once(f, lam, nr, na)
    fine, mass = _plane_once(f, lam, 2 * nr, 2 * na)
    if not np.isfinite(fine):
        raise NonConvergenceError("quad_plane: integrand is not finite on the pulled-back grid")
    return _finish(coarse, fine, mass, spec.target_tol, "quad_plane")


# -- Cauchy differentiation ---------------------------------------------------

def cauchy_derivative(f, z0, order: int, radius: float | None = None, nodes: int = 64):
    """n-th derivative of a holomorphic ``f`` at ``z0`` from the Cauchy formula.

    Trapezoid rule on a circle; the default radius ``min(Im z0 / 2, 1/2)``
    keeps the circle inside the upper half-plane.
    """
    z0 = complex(z0)
    if radius is None:
        radius = min(0.5 * z0.imag, 0.5)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    ring = np.exp(1j * theta)
    vals = np.asarray(f(z0 + radius * ring), dtype=complex)
    return complex(math.factorial(order) / radius ** order * np.mean(vals * ring ** (-order)))

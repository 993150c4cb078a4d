"""Rankin-Cohen bracket, the holographic operator Psi, the adjoint and the group action."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedExpression
from .expr import HoloExpr, ShiftedPower
from .kernels import WeightTriple, adjoint_constant, rc_coefficients, relative_kernel
from .numerics import DEFAULT_SPEC, QuadratureSpec, UHPoint, as_uhp, quad_plane, quad_segment

__all__ = [
    "GroupElement",
    "SegmentParam",
    "rc_apply",
    "psi_apply",
    "rc_adjoint_apply",
    "rc_adjoint_kernel",
    "moebius_action",
    "moebius_transform",
]


@dataclass(frozen=True)
class GroupElement:
    """An element ``g`` of SL2(R), stored through the entries of ``g^{-1}``.

    The action on functions uses ``g^{-1} = [[a, b], [c, d]]``; the induced
    motion of points is ``w -> g w = (d w - b) / (-c w + a)``.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12:
            raise DomainError(f"determinant must be 1, got {det!r}")

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def random(cls, rng: np.random.Generator, scale: float = 1.0):
        """Iwasawa-style sample ``k(theta) a(r) n(x)`` with moderate entries."""
        theta = rng.uniform(0.0, 2.0 * math.pi)
        r = math.exp(rng.uniform(-0.5, 0.5) * scale)
        x = rng.uniform(-1.0, 1.0) * scale
        k = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        m = k @ np.diag([r, 1.0 / r]) @ np.array([[1.0, x], [0.0, 1.0]])
        a, b, c, d = m.ravel()
        # renormalise so the determinant is 1 to machine precision
        s = math.sqrt(a * d - b * c)
        return cls(a / s, b / s, c / s, d / s)

    def inverse(self) -> "GroupElement":
        """The element ``g^{-1}``, whose own inverse ``g`` is stored."""
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def inverse_matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def act_on_point(self, w):
        w = as_uhp(w)
        return (self.d * w - self.b) / (-self.c * w + self.a)


@dataclass(frozen=True)
class SegmentParam:
    """``w(v) = ((w2 - w1) v + (w2 + w1)) / 2`` on ``(-1, 1)``."""

    w1: complex
    w2: complex

    def __post_init__(self):
        as_uhp(self.w1)
        as_uhp(self.w2)

    def __call__(self, v):
        return 0.5 * ((self.w2 - self.w1) * np.asarray(v) + (self.w2 + self.w1))


def _pt(z):
    return z.z if isinstance(z, UHPoint) else z


def rc_apply(tw: WeightTriple, f: HoloExpr, z):
    """Rankin-Cohen bracket of a two-variable expression, restricted to ``z1 = z2 = z``."""
    if not isinstance(f, HoloExpr) or f.nvars != 2:
        raise UnsupportedExpression("rc_apply needs a two-variable HoloExpr")
    z = _pt(z)
    l = tw.l
    total = 0j
    for j, a in enumerate(rc_coefficients(tw)):
        total = total + a * f.derivative(l - j, j)(z, z)
    return total


def psi_apply(tw: WeightTriple, g, w1, w2, spec: QuadratureSpec = DEFAULT_SPEC):
    """Holographic operator: a weighted segment average of ``g`` between ``w1`` and ``w2``.

    ``g`` is any callable accepting complex arrays (HoloExpr included).
    """
    w1, w2 = complex(as_uhp(w1)), complex(as_uhp(w2))
    l = tw.l
    seg = SegmentParam(w1, w2)
    pref = (w1 - w2) ** l / (2.0 ** (tw.lambda1 + tw.lambda2 + 2 * l - 1.0) * math.factorial(l))
    if pref == 0:
        return 0j
    integral = quad_segment(lambda v: g(seg(v)), tw.lambda1 + l, tw.lambda2 + l, spec)
    return pref * integral


def rc_adjoint_apply(tw: WeightTriple, g, w1, w2, spec: QuadratureSpec = DEFAULT_SPEC):
    """Adjoint of the bracket as a plane integral against the relative kernel.

    Computes ``(-1)^l C(lam1, lam2) int g(z) relative_kernel(z, w1, w2) dmu(z)``
    with ``dmu = y^{lam3 - 2} dx dy``; the sign makes the result agree with
    ``conj(RC[K(., (w1, w2))](z))`` for ``g = K_lam3(., z)``.
    """
    w1, w2 = complex(as_uhp(w1)), complex(as_uhp(w2))
    l = tw.l
    if l > 0 and w1 == w2:
        return 0j
    const = (-1) ** l * adjoint_constant(tw)
    integral = quad_plane(lambda z: g(z) * relative_kernel(tw, z, w1, w2), tw.lambda3, spec)
    return const * integral


def rc_adjoint_kernel(tw: WeightTriple, z0, w1, w2):
    """Closed form of :func:`rc_adjoint_apply` for ``g = K_lam3(., z0)``."""
    return (-1) ** tw.l * adjoint_constant(tw) * relative_kernel(tw, z0, w1, w2)


# -- group action ---------------------------------------------------------------

def _check_integer_weight(lam):
    if lam != int(lam) or lam < 2:
        raise DomainError(f"the action is single-valued only for integer weights >= 2, got {lam}")
    return int(lam)


def moebius_action(lam, g: GroupElement, f, z):
    """``(c z + d)^{-lam} f((a z + b)/(c z + d))`` with ``[[a, b], [c, d]] = g^{-1}``."""
    lam = _check_integer_weight(lam)
    z = _pt(z)
    denom = g.c * np.asarray(z) + g.d
    if np.any(denom == 0):
        raise DomainError("c z + d vanishes")
    moved = (g.a * np.asarray(z) + g.b) / denom
    out = denom ** (-lam) * f(moved if np.ndim(moved) else complex(moved))
    return complex(out) if np.ndim(out) == 0 else out


def moebius_transform(lams, g: GroupElement, f: HoloExpr) -> HoloExpr:
    """``pi_lam(g) f`` as a new expression, variable by variable.

    Only shifted powers whose order equals the weight of their variable are
    supported: ``pi_lam(g) S_w = (a - c conj w)^{-lam} S_{g w}``.
    """
    if np.ndim(lams) == 0:
        lams = (lams,)
    lams = tuple(_check_integer_weight(lam) for lam in lams)
    if len(lams) != f.nvars:
        raise TypeError(f"expected {f.nvars} weights")
    terms = []
    for coef, atoms in f.terms:
        c = coef
        out = []
        for atom, lam in zip(atoms, lams):
            if not (isinstance(atom, ShiftedPower) and atom.order == lam):
                raise UnsupportedExpression(f"{atom!r} is not a weight-{lam} kernel section")
            w = complex(atom.w)
            c *= (g.a - g.c * np.conj(w)) ** (-lam)
            out.append(ShiftedPower(atom.order, complex(g.act_on_point(w))))
        terms.append((c, out))
    return HoloExpr(terms, f.nvars)

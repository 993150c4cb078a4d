"""Closed-form function families with exact derivative and Laplace rules.

``HoloExpr`` is a finite sum of products of one-variable atoms, one atom per
variable.  Atoms are shifted powers ``((z - conj(w)) / 2i) ** (-order)``
(kernel sections are a scalar multiple of these) and monomials ``z ** k``.
Differentiation maps atoms to atoms, so mixed partials of any order stay
in the family and are evaluated exactly.

``L2Expr`` is the matching family on the half-line(s):
``t ** power * exp(-i t conj(w))`` with ``w`` in the upper half-plane, whose
Laplace transforms are shifted powers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UnsupportedExpression
from .numerics import UHPoint, principal_power, two_i_pow
from .special import pochhammer

__all__ = ["ShiftedPower", "Monomial", "HoloExpr", "ExpAtom", "L2Expr"]


@dataclass(frozen=True)
class ShiftedPower:
    """``z -> ((z - conj(w)) / 2i) ** (-order)``."""

    order: float
    w: complex

    def __post_init__(self):
        if not complex(self.w).imag > 0:
            raise DomainError(f"shift point {self.w} must lie in the upper half-plane")

    def __call__(self, z):
        return principal_power((z - np.conj(self.w)) / 2j, -self.order)

    def derivative(self, n: int):
        if n == 0:
            return 1.0 + 0j, self
        coef = (-1) ** n * pochhammer(self.order, n) / two_i_pow(n)
        return coef, ShiftedPower(self.order + n, self.w)


@dataclass(frozen=True)
class Monomial:
    """``z -> z ** power``."""

    power: int

    def __call__(self, z):
        return np.asarray(z, dtype=complex) ** self.power if np.ndim(z) else complex(z) ** self.power

    def derivative(self, n: int):
        if n > self.power:
            return 0.0, Monomial(0)
        return float(math.perm(self.power, n)), Monomial(self.power - n)


class HoloExpr:
    """Finite sum ``sum_k c_k prod_j atom_{k,j}(z_j)`` in ``nvars`` variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars: int):
        cleaned = []
        for coef, atoms in terms:
            atoms = tuple(atoms)
            if len(atoms) != nvars:
                raise ValueError(f"term has {len(atoms)} atoms, expected {nvars}")
            if coef != 0:
                cleaned.append((complex(coef), atoms))
        self.terms = tuple(cleaned)
        self.nvars = nvars

    # constructors
    @classmethod
    def zero(cls, nvars: int = 1):
        return cls((), nvars)

    @classmethod
    def shifted_power(cls, order, w, coef=1.0):
        return cls([(coef, (ShiftedPower(order, complex(w)),))], 1)

    @classmethod
    def kernel_section(cls, lam, w):
        """``z -> K_lam(z, w)``."""
        return cls.shifted_power(lam, w, (lam - 1.0) / (4.0 * math.pi))

    @classmethod
    def monomial(cls, power, coef=1.0):
        return cls([(coef, (Monomial(power),))], 1)

    @classmethod
    def tensor(cls, *factors):
        """Product of one-variable expressions in separate variables."""
        terms = [(1.0, ())]
        for fac in factors:
            if fac.nvars != 1:
                raise ValueError("tensor factors must be one-variable expressions")
            terms = [(c0 * c1, a0 + a1) for c0, a0 in terms for c1, a1 in fac.terms]
        return cls(terms, len(factors))

    @classmethod
    def product_kernel(cls, lam1, lam2, w1, w2):
        """``(z1, z2) -> K_lam1(z1, w1) K_lam2(z2, w2)``."""
        return cls.tensor(cls.kernel_section(lam1, w1), cls.kernel_section(lam2, w2))

    # algebra
    def __add__(self, other):
        if not isinstance(other, HoloExpr):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("cannot add expressions in different numbers of variables")
        return HoloExpr(self.terms + other.terms, self.nvars)

    def __mul__(self, scalar):
        if isinstance(scalar, HoloExpr):
            return NotImplemented
        return HoloExpr([(scalar * c, a) for c, a in self.terms], self.nvars)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        return f"HoloExpr({len(self.terms)} terms, nvars={self.nvars})"

    def __call__(self, *zs):
        if len(zs) != self.nvars:
            raise TypeError(f"expected {self.nvars} arguments, got {len(zs)}")
        zs = [z.z if isinstance(z, UHPoint) else z for z in zs]
        out = 0j
        for coef, atoms in self.terms:
            val = coef
            for atom, z in zip(atoms, zs):
                val = val * atom(z)
            out = out + val
        if np.ndim(out) == 0 and not any(np.ndim(z) for z in zs):
            return complex(out)
        shape = np.broadcast_shapes(*(np.shape(z) for z in zs))
        return np.broadcast_to(out, shape).astype(complex)

    def derivative(self, *orders):
        """Exact mixed partial ``d^{sum orders} / dz_1^{o_1} ... dz_n^{o_n}``."""
        if len(orders) != self.nvars:
            raise TypeError(f"expected {self.nvars} orders")
        new_terms = []
        for coef, atoms in self.terms:
            c = coef
            out_atoms = []
            for atom, n in zip(atoms, orders):
                if not hasattr(atom, "derivative"):
                    raise UnsupportedExpression(f"{atom!r} has no derivative rule")
                dc, da = atom.derivative(int(n))
                c = c * dc
                out_atoms.append(da)
            new_terms.append((c, out_atoms))
        return HoloExpr(new_terms, self.nvars)


@dataclass(frozen=True)
class ExpAtom:
    """``t -> t ** power * exp(-i t conj(w))``, ``w`` in the upper half-plane.

    Any finite power is allowed; the Laplace rule needs ``power > -1``.
    """

    power: float
    w: complex

    def __post_init__(self):
        if not complex(self.w).imag > 0:
            raise DomainError(f"decay point {self.w} must lie in the upper half-plane")
        if not math.isfinite(self.power):
            raise DomainError(f"power must be finite, got {self.power}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float) if np.ndim(t) else float(t)
        return t ** self.power * np.exp(-1j * t * np.conj(self.w))

    def laplace(self):
        # int_0^inf t^a e^{it(z - conj w)} dt = Gamma(a+1) ((z - conj w)/i)^{-(a+1)}
        if not self.power > -1:
            raise DomainError(f"t^{self.power} is not integrable at 0")
        a1 = self.power + 1.0
        return math.gamma(a1) * 2.0 ** (-a1), ShiftedPower(a1, self.w)

    @property
    def decay(self) -> float:
        return complex(self.w).imag


class L2Expr:
    """Finite sum of products of :class:`ExpAtom` in ``nvars`` variables."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms, nvars: int):
        cleaned = []
        for coef, atoms in terms:
            atoms = tuple(atoms)
            if len(atoms) != nvars:
                raise ValueError(f"term has {len(atoms)} atoms, expected {nvars}")
            if coef != 0:
                cleaned.append((complex(coef), atoms))
        self.terms = tuple(cleaned)
        self.nvars = nvars

    @classmethod
    def atom(cls, power, w, coef=1.0):
        return cls([(coef, (ExpAtom(power, complex(w)),))], 1)

    @classmethod
    def tensor(cls, *factors):
        terms = [(1.0, ())]
        for fac in factors:
            if fac.nvars != 1:
                raise ValueError("tensor factors must be one-variable expressions")
            terms = [(c0 * c1, a0 + a1) for c0, a0 in terms for c1, a1 in fac.terms]
        return cls(terms, len(factors))

    @classmethod
    def zero(cls, nvars: int = 1):
        return cls((), nvars)

    def __add__(self, other):
        if not isinstance(other, L2Expr):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError("cannot add expressions in different numbers of variables")
        return L2Expr(self.terms + other.terms, self.nvars)

    def __mul__(self, scalar):
        if isinstance(scalar, L2Expr):
            return NotImplemented
        return L2Expr([(scalar * c, a) for c, a in self.terms], self.nvars)

    __rmul__ = __mul__

    def __repr__(self):
        return f"L2Expr({len(self.terms)} terms, nvars={self.nvars})"

    def __call__(self, *ts):
        if len(ts) != self.nvars:
            raise TypeError(f"expected {self.nvars} arguments, got {len(ts)}")
        out = 0j
        for coef, atoms in self.terms:
            val = coef
            for atom, t in zip(atoms, ts):
                val = val * atom(t)
            out = out + val
        if np.ndim(out) == 0 and not any(np.ndim(t) for t in ts):
            return complex(out)
        shape = np.broadcast_shapes(*(np.shape(t) for t in ts))
        return np.broadcast_to(out, shape).astype(complex)

    def times_power(self, k: float, var: int = 0) -> "L2Expr":
        """Multiply by ``t_var ** k`` (shifts every atom power in that variable)."""
        terms = []
        for coef, atoms in self.terms:
            atoms = list(atoms)
            atoms[var] = ExpAtom(atoms[var].power + k, atoms[var].w)
            terms.append((coef, atoms))
        return L2Expr(terms, self.nvars)

    def check_membership(self, *lams):
        """Raise unless every atom is square-integrable against ``t^{1-lam} dt``."""
        if len(lams) != self.nvars:
            raise TypeError(f"expected {self.nvars} weights")
        for _, atoms in self.terms:
            for atom, lam in zip(atoms, lams):
                if not 2.0 * atom.power - lam + 1.0 > -1.0:
                    raise DomainError(f"t^{atom.power} is not in L^2(t^(1-{lam}) dt) near 0")
        return self

    def min_powers(self):
        """Smallest power per variable (the endpoint behaviour near 0)."""
        if not self.terms:
            return (0.0,) * self.nvars
        return tuple(min(atoms[j].power for _, atoms in self.terms) for j in range(self.nvars))

    def laplace(self) -> HoloExpr:
        """Closed-form Laplace transform, variable by variable."""
        terms = []
        for coef, atoms in self.terms:
            c = coef
            out = []
            for atom in atoms:
                dc, sp = atom.laplace()
                c *= dc
                out.append(sp)
            terms.append((c, out))
        return HoloExpr(terms, self.nvars)

import math

import numpy as np
import pytest
import sympy as sp

from rankin_cohen import l2model as L
from rankin_cohen.errors import DomainError
from rankin_cohen.expr import L2Expr
from rankin_cohen.kernels import WeightTriple, bergman_kernel, kernel_inverse_laplace
from rankin_cohen.numerics import i_pow, quad_plane
from rankin_cohen.operators import GroupElement, moebius_action, psi_apply, rc_apply
from rankin_cohen.special import JacobiParams, jacobi, jacobi_norm_sq

from conftest import uhp

TRIPLES = [WeightTriple.from_l(*lams, l) for lams in [(2, 2), (2.5, 3)] for l in range(3)]


def test_laplace_of_decaying_exponential():
    eps = 0.7
    g = L2Expr.atom(0.0, 1j * eps)
    z = 0.3 + 1.2j
    assert L.laplace(g, z) == pytest.approx(1j / (z + 1j * eps), rel=1e-14)
    assert L.laplace_numeric(g, z) == pytest.approx(1j / (z + 1j * eps), rel=1e-10)


def test_kernel_preimage_is_inverse_laplace(rng):
    for lam in (2, 3.5):
        z0, z, t = uhp(rng), uhp(rng), 1.3
        g = L.kernel_preimage(lam, z0)
        assert g(t) == pytest.approx(kernel_inverse_laplace(lam, z0, t), rel=1e-14)
        assert L.laplace(g, z) == pytest.approx(bergman_kernel(lam, z, z0), rel=1e-13)


@pytest.mark.parametrize("lam", [2, 2.5, 3])
def test_isometry_constant(lam, rng):
    assert L.isometry_constant(lam) == pytest.approx(2 ** (2 - lam) * math.pi * math.gamma(lam - 1), rel=1e-15)
    g = L.kernel_preimage(lam, uhp(rng))
    Fg = g.laplace()
    lhs = quad_plane(lambda u: np.abs(Fg(u)) ** 2, lam).real
    assert lhs == pytest.approx(L.isometry_constant(lam) * L.norm_sq_halfline(g, lam), rel=1e-6)


def test_laplace2_numeric_matches_closed_form(rng):
    tw = WeightTriple(2.5, 3, 5.5)
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    z1, z2 = uhp(rng, 2)
    assert L.laplace2_numeric(F, z1, z2) == pytest.approx(L.laplace2(F, z1, z2), rel=1e-8)


def test_rc_hat_examples():
    tw = WeightTriple(2, 2, 4)
    F = L2Expr.tensor(L2Expr.atom(0.0, 1j), L2Expr.atom(0.0, 1j))
    t = np.array([0.3, 1.0, 4.0])
    assert np.allclose(L.rc_hat_apply(tw, F, t), t * np.exp(-t), rtol=1e-13)
    assert L.rc_hat_apply(WeightTriple(2, 2, 6), L2Expr.zero(2), 1.0) == 0
    with pytest.raises(DomainError):
        L.rc_hat_apply(tw, F, 0.0)


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_rc_diagram(tw, rng):
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    z = uhp(rng)
    lhs = L.laplace_numeric(lambda t: L.rc_hat_apply(tw, F, t), z)
    assert lhs == pytest.approx(rc_apply(tw, F.laplace(), z), rel=1e-6)


def test_phi_examples():
    tw = WeightTriple(2.5, 3, 5.5)
    g = L.kernel_preimage(5.5, 0.2 + 1j)
    x, y = 0.7, 1.9
    s = x + y
    assert L.phi_apply(tw, g, x, y) == pytest.approx(x**1.5 * y**2 * s ** (1 - 5.5) * g(s), rel=1e-13)
    t1 = WeightTriple(2.5, 3, 7.5)
    p1_at_0 = jacobi(1, 1.5, 2.0, 0.0)
    assert L.phi_apply(t1, g, 0.8, 0.8) == pytest.approx(0.8**1.5 * 0.8**2 * 1.6 ** (-5.5) * p1_at_0 * g(1.6), rel=1e-13)
    assert L.phi_apply(t1, L2Expr.zero(1), 0.3, 0.4) == 0


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_holographic_diagram_holds_up_to_phase(tw, rng):
    # F2 Phi = (-i)^l Psi F; at l = 0 the phase is 1
    z, w1, w2 = uhp(rng, 3)
    g = L.kernel_preimage(tw.lambda3, z)
    lhs = L.laplace2_numeric(lambda x, y: L.phi_apply(tw, g, x, y), w1, w2, powers=(tw.lambda1 - 1, tw.lambda2 - 1))
    rhs = psi_apply(tw, g.laplace(), w1, w2)
    assert lhs == pytest.approx(i_pow(-tw.l) * rhs, rel=1e-6)


def test_iota_examples(rng):
    assert L.iota(3.0, 0.0) == (1.5, 1.5)
    assert L.iota(2.0, 0.5) == (0.5, 1.5)
    x, y = rng.uniform(0.1, 5, 10), rng.uniform(0.1, 5, 10)
    assert np.allclose(L.iota(*L.iota_inv(x, y)), (x, y), rtol=1e-14)


def test_strat_point():
    p = L.StratPoint(2.0, 0.5)
    assert p.to_quadrant() == (0.5, 1.5)
    q = L.StratPoint.from_quadrant(0.5, 1.5)
    assert (q.t, q.v) == pytest.approx((2.0, 0.5))
    with pytest.raises(DomainError):
        L.StratPoint(1.0, 1.0)
    with pytest.raises(DomainError):
        L.StratPoint(0.0, 0.2)
    with pytest.raises(DomainError):
        L.StratPoint.from_quadrant(0.0, 1.0)


def test_t_iota_round_trip(rng):
    tw = WeightTriple(2.5, 3, 5.5)
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    f = L.t_iota_inv(L.t_iota(F, 2.5, 3), 2.5, 3)
    for x, y in rng.uniform(0.1, 4, (5, 2)):
        assert f(x, y) == pytest.approx(F(x, y), rel=1e-12)


def test_t_iota_collapses_radial_profiles():
    x, y, t, v, l1, l2 = sp.symbols("x y t v lambda1 lambda2", positive=True)
    h = sp.Function("h")
    f = x ** (l1 - 1) * y ** (l2 - 1) * h(x + y)
    tf = (t / 2) ** (2 - l1 - l2) * (1 - v) ** (1 - l1) * (1 + v) ** (1 - l2) * f.subs({x: t * (1 - v) / 2, y: t * (1 + v) / 2})
    assert sp.simplify(sp.powsimp(sp.expand_power_base(tf, force=True), force=True) - h(t)) == 0


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_t_iota_scales_norms(tw, rng):
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    a = L.norm_sq_stratified(L.t_iota(F, tw.lambda1, tw.lambda2), tw.lambda1, tw.lambda2)
    b = L.norm_sq_quadrant(F, tw.lambda1, tw.lambda2)
    assert a / b == pytest.approx(2 ** (tw.lambda1 + tw.lambda2 - 1), rel=1e-8)


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_theta_isometry_and_inverse(tw, rng):
    h = L.kernel_preimage(tw.lambda3, uhp(rng))
    H = L.theta(h, tw)
    assert L.norm_sq_stratified(H, tw.lambda1, tw.lambda2) == pytest.approx(L.norm_sq_halfline(h, tw.lambda3), rel=1e-8)
    back = L.theta_inv(H, tw)
    for t in (0.2, 1.0, 3.7):
        assert back(t) == pytest.approx(h(t), rel=1e-13)
    assert L.theta(L2Expr.zero(1), tw)(1.0, 0.3) == 0


def test_jacobi_norm_matches_params():
    tw = WeightTriple(2.5, 3, 9.5)
    assert L.jacobi_norm(tw) ** 2 == pytest.approx(jacobi_norm_sq(JacobiParams(2, 1.5, 2.0)), rel=1e-15)


def test_jacobi_project_examples(rng):
    tw = WeightTriple(2.5, 3, 7.5)
    a, b = 1.5, 2.0

    def along(m):
        return L.StratifiedFunction(lambda t, v: np.exp(-t) * jacobi(m, a, b, v))

    for t, v in rng.uniform((0.1, -0.9), (4, 0.9), (5, 2)):
        assert L.jacobi_project(along(1), tw, t, v) == pytest.approx(np.exp(-t) * jacobi(1, a, b, v), rel=1e-12)
        assert abs(L.jacobi_project(along(3), tw, t, v)) < 1e-10
    H = L.t_iota(L.kernel_preimage2(tw, uhp(rng), uhp(rng)), 2.5, 3)
    JH = L.StratifiedFunction(lambda t, v: L.jacobi_project(H, tw, t, v))
    assert L.jacobi_project(JH, tw, 1.3, 0.2) == pytest.approx(JH(1.3, 0.2), rel=1e-10)


@pytest.mark.parametrize("lams", [(2, 2), (2.5, 3)])
def test_jacobi_projections_satisfy_bessel(lams):
    # finite truncation of the Jacobi decomposition; completeness itself is not asserted
    tw = WeightTriple.from_l(*lams, 0)
    H = L.t_iota(L.kernel_preimage2(tw, 0.3 + 1.2j, -0.4 + 0.8j), *lams)
    total = L.norm_sq_stratified(H, *lams)
    parts = []
    for m in range(6):
        twm = WeightTriple.from_l(*lams, m)
        Jm = L.StratifiedFunction(lambda t, v, twm=twm: L.jacobi_project(H, twm, t, v))
        parts.append(L.norm_sq_stratified(Jm, *lams))
    assert all(p > 0 for p in parts)
    assert sum(parts) <= total * (1 + 1e-8)


@pytest.mark.parametrize("tw", [WeightTriple.from_l(*lams, l) for lams in [(2, 2), (2.5, 3)] for l in range(4)], ids=str)
def test_stratified_diagram_constants(tw, rng):
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    samples = [tuple(p) for p in rng.uniform(0.1, 3, (8, 2))]
    derived = L.diagram_check_stratified(tw, F, samples, constant="corrected", tol=1e-8)
    assert derived.passed, derived.max_rel_err
    stated = L.diagram_check_stratified(tw, F, samples, constant="stated", tol=1e-8)
    ratios = np.array([complex(*s["ratio"]) for s in stated.samples])
    assert np.allclose(ratios, 4.0, rtol=1e-9)


def test_stratified_diagram_simple_profiles():
    tw = WeightTriple(2, 2, 4)
    samples = [(0.4, 0.9), (1.5, 0.2), (2.0, 2.0)]

    def F(x, y):
        return np.exp(-(x + y))

    rep = L.diagram_check_stratified(tw, F, samples, constant="corrected", powers=(0.0, 0.0), tol=1e-8)
    assert rep.passed, rep.max_rel_err

    # a profile along P_2 is orthogonal to P_1: both routes vanish
    t1 = WeightTriple(2, 2, 6)

    def G(x, y):
        s = x + y
        return x * y * np.exp(-s) * jacobi(2, 1.0, 1.0, (y - x) / s)

    rep = L.diagram_check_stratified(t1, G, samples, constant="corrected", powers=(1.0, 1.0), tol=1e-8)
    for s in rep.samples:
        assert abs(complex(*s["route_a"])) < 1e-12 and abs(complex(*s["route_b"])) < 1e-12

    rep = L.diagram_check_stratified(t1, L2Expr.zero(2), samples, constant="corrected", tol=1e-8)
    assert all(complex(*s["route_a"]) == 0 and complex(*s["route_b"]) == 0 for s in rep.samples)


def test_moebius_l2_intertwines_laplace(rng):
    g = GroupElement.random(rng)
    k = L.kernel_preimage(4, uhp(rng))
    moved = L.moebius_l2(4, g, k).laplace()
    for z in uhp(rng, 3):
        assert moved(z) == pytest.approx(moebius_action(4, g, k.laplace(), z), rel=1e-12)


@pytest.mark.parametrize("tw", [WeightTriple(2, 2, 4), WeightTriple(2, 2, 6), WeightTriple(3, 4, 9)], ids=str)
def test_stratified_equivariance(tw, rng):
    g = GroupElement.random(rng)
    F = L.kernel_preimage2(tw, uhp(rng), uhp(rng))
    k = L.kernel_preimage(tw.lambda3, uhp(rng))
    left, right = L.stratified_equivariance_gap(tw, g, F, k)
    assert left == pytest.approx(right, rel=1e-6)

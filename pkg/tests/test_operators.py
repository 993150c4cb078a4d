import numpy as np
import pytest

from rankin_cohen.errors import DomainError, UnsupportedExpression
from rankin_cohen.expr import HoloExpr
from rankin_cohen.kernels import (
    WeightTriple,
    adjoint_constant,
    bergman_kernel,
    psi_kernel_constant,
    psi_link_constant,
    rc_of_product_kernel,
    relative_kernel,
)
from rankin_cohen.operators import (
    GroupElement,
    SegmentParam,
    moebius_action,
    moebius_transform,
    psi_apply,
    rc_adjoint_apply,
    rc_adjoint_kernel,
    rc_apply,
)
from rankin_cohen.numerics import quad_plane
from rankin_cohen.special import beta_fn

from conftest import uhp

TRIPLES = [WeightTriple.from_l(*lams, l) for lams in [(2, 2), (2.5, 3)] for l in range(3)]


def test_group_element_checks_determinant(rng):
    with pytest.raises(DomainError):
        GroupElement(1, 1, 1, 1)
    g = GroupElement.random(rng)
    m = g.inverse_matrix() @ g.inverse().inverse_matrix()
    assert np.allclose(m, np.eye(2), atol=1e-13)
    assert GroupElement.identity().act_on_point(0.3 + 2j) == 0.3 + 2j


def test_segment_param_endpoints():
    seg = SegmentParam(1j, 2 + 3j)
    assert seg(-1.0) == 1j and seg(1.0) == 2 + 3j


def test_rc_apply_l0_is_restriction(rng):
    f = HoloExpr.product_kernel(2.5, 3, uhp(rng), uhp(rng))
    z = uhp(rng)
    assert rc_apply(WeightTriple(2.5, 3, 5.5), f, z) == pytest.approx(f(z, z), rel=1e-15)


def test_rc_apply_hand_expansion_l1():
    # f(z1, z2) = z1 z2: lam2 d1 f - lam1 d2 f on the diagonal = (lam2 - lam1) z
    tw = WeightTriple(2, 3, 7)
    f = HoloExpr.tensor(HoloExpr.monomial(1), HoloExpr.monomial(1))
    z = 0.4 + 1.7j
    assert rc_apply(tw, f, z) == pytest.approx((3 - 2) * z, rel=1e-15)


def test_rc_apply_needs_two_variables():
    with pytest.raises(UnsupportedExpression):
        rc_apply(WeightTriple(2, 2, 4), HoloExpr.kernel_section(2, 1j), 1j)


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_rc_apply_on_product_kernel_matches_closed_form(tw, rng):
    for _ in range(5):
        w1, w2, z = uhp(rng, 3)
        f = HoloExpr.product_kernel(tw.lambda1, tw.lambda2, w1, w2)
        assert np.conj(rc_apply(tw, f, z)) == pytest.approx(rc_of_product_kernel(tw, z, w1, w2), rel=1e-12)


def test_psi_apply_on_diagonal_l0():
    tw = WeightTriple(2.5, 3, 5.5)
    g = HoloExpr.kernel_section(5.5, 0.3 + 1j)
    w = -0.2 + 1.5j
    assert psi_apply(tw, g, w, w) == pytest.approx(g(w) * beta_fn(2.5, 3), rel=1e-13)
    assert psi_apply(tw, lambda u: 0 * u, 1j, 2j) == 0


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_psi_of_kernel(tw, rng):
    for _ in range(5):
        z, w1, w2 = uhp(rng, 3)
        lhs = psi_apply(tw, HoloExpr.kernel_section(tw.lambda3, z), w1, w2)
        assert lhs == pytest.approx(psi_kernel_constant(tw) * relative_kernel(tw, z, w1, w2), rel=1e-8)


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_adjoint_on_kernel(tw, rng):
    z0, w1, w2 = uhp(rng, 3)
    g = HoloExpr.kernel_section(tw.lambda3, z0)
    val = rc_adjoint_apply(tw, g, w1, w2)
    assert val == pytest.approx(rc_adjoint_kernel(tw, z0, w1, w2), rel=1e-6)
    assert val == pytest.approx((-1) ** tw.l * adjoint_constant(tw) * relative_kernel(tw, z0, w1, w2), rel=1e-6)
    # the adjoint's defining pairing: RC^* K_lam3(., z0) evaluated at (w1, w2) is conj(RC K(., (w1, w2))(z0))
    assert val == pytest.approx(rc_of_product_kernel(tw, z0, w1, w2), rel=1e-6)


@pytest.mark.parametrize("tw", TRIPLES, ids=str)
def test_adjoint_is_c_times_psi(tw, rng):
    g = 0.7 * HoloExpr.kernel_section(tw.lambda3, uhp(rng)) - 1.3j * HoloExpr.kernel_section(tw.lambda3, uhp(rng))
    w1, w2 = uhp(rng, 2)
    assert rc_adjoint_apply(tw, g, w1, w2) == pytest.approx(psi_link_constant(tw) * psi_apply(tw, g, w1, w2), rel=1e-6)


def test_adjoint_vanishes_on_diagonal_and_zero():
    tw = WeightTriple(2, 2, 6)
    assert rc_adjoint_apply(tw, HoloExpr.kernel_section(6, 1j), 1 + 1j, 1 + 1j) == 0
    assert rc_adjoint_apply(tw, lambda z: 0 * z, 1j, 2j) == 0


def test_moebius_identity_and_diagonal():
    f = HoloExpr.kernel_section(4, 0.5 + 1j)
    z = -0.3 + 0.9j
    assert moebius_action(4, GroupElement.identity(), f, z) == pytest.approx(f(z), rel=1e-15)
    a = 1.7
    # g^{-1} = diag(a, 1/a): (c z + d)^{-lam} f((a z + b)/(c z + d)) = a^lam f(a^2 z)
    g = GroupElement(a, 0.0, 0.0, 1 / a)
    assert moebius_action(4, g, f, z) == pytest.approx(a**4 * f(a * a * z), rel=1e-14)


def test_moebius_requires_integer_weight():
    with pytest.raises(DomainError):
        moebius_action(2.5, GroupElement.identity(), lambda z: z, 1j)


def test_moebius_is_a_representation(rng):
    g1, g2 = GroupElement.random(rng), GroupElement.random(rng)
    # (g1 g2)^{-1} = g2^{-1} g1^{-1}
    m = g2.inverse_matrix() @ g1.inverse_matrix()
    g12 = GroupElement(*m.ravel())
    f = HoloExpr.kernel_section(3, 0.2 + 1.1j)
    z = 0.5 + 0.7j
    lhs = moebius_action(3, g12, f, z)
    rhs = moebius_action(3, g1, lambda u: moebius_action(3, g2, f, u), z)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_moebius_transform_matches_pointwise_action(rng):
    g = GroupElement.random(rng)
    w = uhp(rng)
    f = HoloExpr.kernel_section(4, w)
    fg = moebius_transform(4, g, f)
    for z in uhp(rng, 4):
        assert fg(z) == pytest.approx(moebius_action(4, g, f, z), rel=1e-12)
    with pytest.raises(UnsupportedExpression):
        moebius_transform(4, g, HoloExpr.kernel_section(3, w))


@pytest.mark.parametrize("tw", [WeightTriple.from_l(2, 2, l) for l in range(3)] + [WeightTriple(3, 4, 9)], ids=str)
def test_rc_equivariance(tw, rng):
    for _ in range(10):
        g = GroupElement.random(rng)
        w1, w2, z = uhp(rng, 3)
        f = HoloExpr.product_kernel(tw.lambda1, tw.lambda2, w1, w2)
        lhs = rc_apply(tw, moebius_transform((tw.lambda1, tw.lambda2), g, f), z)
        rhs = moebius_action(tw.lambda3, g, lambda u: rc_apply(tw, f, u), z)
        assert lhs == pytest.approx(rhs, rel=1e-8)


def test_action_is_unitary_on_kernel_sections(rng):
    # <pi(g) K(., w), pi(g) K(., w')> = <K(., w), K(., w')> = K(w', w)
    g = GroupElement.random(rng)
    w, wp = uhp(rng, 2)
    kg = moebius_transform(4, g, HoloExpr.kernel_section(4, w))
    kgp = moebius_transform(4, g, HoloExpr.kernel_section(4, wp))
    ip = quad_plane(lambda z: kg(z) * np.conj(kgp(z)), 4)
    assert ip == pytest.approx(bergman_kernel(4, wp, w), rel=1e-8)

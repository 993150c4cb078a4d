import math

import numpy as np
import pytest
from scipy.special import roots_jacobi

from rankin_cohen.errors import DomainError, NonConvergenceError
from rankin_cohen.kernels import bergman_kernel
from rankin_cohen.numerics import (
    DEFAULT_SPEC,
    QuadratureSpec,
    UHPoint,
    as_uhp,
    cauchy_derivative,
    gauss_jacobi,
    i_pow,
    principal_power,
    quad_halfline,
    quad_plane,
    quad_segment,
    two_i_pow,
)
from rankin_cohen.special import jacobi


def test_principal_power_examples():
    assert principal_power(1, -3.5) == 1
    assert principal_power(1 + 1j, 2) == pytest.approx(2j, abs=1e-15)
    assert principal_power(2, -0.5) == pytest.approx(1 / math.sqrt(2), rel=1e-15)


def test_principal_power_rejects_left_half_plane():
    with pytest.raises(DomainError):
        principal_power(-1 + 0.1j, 0.5)
    with pytest.raises(DomainError):
        principal_power(np.array([1.0, -2.0]), 2)


def test_principal_power_vectorised_matches_scalar(rng):
    b = rng.uniform(0.1, 3, 10) + 1j * rng.uniform(-3, 3, 10)
    vec = principal_power(b, -2.7)
    assert np.allclose(vec, [principal_power(x, -2.7) for x in b], rtol=1e-15)


def test_i_powers():
    for n in range(-8, 9):
        assert i_pow(n) == pytest.approx(1j**n, abs=1e-15)
        assert two_i_pow(n) == pytest.approx((2j) ** n, rel=1e-14)


def test_uhpoint_validation():
    assert complex(UHPoint(0.3, 1.2)) == 0.3 + 1.2j
    assert as_uhp(1j) == 1j
    with pytest.raises(DomainError):
        UHPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        as_uhp(1 - 1j)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(segment_nodes=1)
    with pytest.raises(ValueError):
        QuadratureSpec(target_tol=0)
    assert DEFAULT_SPEC.with_(segment_nodes=32).segment_nodes == 32


@pytest.mark.parametrize("n,a,b", [(5, 0.0, 0.0), (12, 1.0, 2.5), (40, 0.5, -0.5), (64, 3.0, 1.0)])
def test_gauss_jacobi_matches_scipy(n, a, b):
    x, w = gauss_jacobi(n, a, b)
    xs, ws = roots_jacobi(n, a, b)
    order = np.argsort(xs)
    assert np.allclose(np.sort(x), xs[order], atol=1e-13)
    assert np.allclose(w[np.argsort(x)], ws[order], rtol=1e-11)


def test_quad_segment_examples():
    assert quad_segment(lambda v: np.ones_like(v), 1, 1) == pytest.approx(2, rel=1e-14)
    assert quad_segment(lambda v: np.ones_like(v), 2, 2) == pytest.approx(4 / 3, rel=1e-14)
    # P_2^{(1,1)} is orthogonal to constants; dense midpoint sum as the independent oracle
    val = quad_segment(lambda v: jacobi(2, 1.0, 1.0, v), 2, 2)
    v = -1 + (np.arange(1_000_000) + 0.5) * 2e-6
    riemann = np.sum((15 / 4 * v**2 - 3 / 4) * (1 - v * v)) * 2e-6
    assert abs(val) < 1e-13
    assert abs(riemann) < 1e-9


def test_quad_segment_batched_leading_axis():
    ks = np.arange(1, 4)[:, None]
    vals = quad_segment(lambda v: v ** (2 * ks), 1, 1)
    assert np.allclose(vals, 2 / (2 * np.arange(1, 4) + 1), rtol=1e-13)


def test_quad_segment_nonconvergence_is_reported():
    with pytest.raises(NonConvergenceError) as info:
        quad_segment(lambda v: np.exp(300j * v), 1, 1, QuadratureSpec(segment_nodes=8))
    assert info.value.discrepancy > 0


def test_quad_halfline_examples():
    assert quad_halfline(lambda t: np.exp(-t)) == pytest.approx(1, rel=1e-12)
    assert quad_halfline(lambda t: np.exp(-t), 2) == pytest.approx(2, rel=1e-12)
    assert quad_halfline(lambda t: t * np.exp(-2 * t), 1) == pytest.approx(0.25, rel=1e-12)


def test_quad_halfline_singular_weight_and_oscillation():
    # int t^{-1/2} e^{-t} = sqrt(pi); int e^{(-1+3i) t} = 1/(1-3i)
    assert quad_halfline(lambda t: np.exp(-t), -0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-11)
    assert quad_halfline(lambda t: np.exp((-1 + 3j) * t)) == pytest.approx(1 / (1 - 3j), rel=1e-10)


def test_quad_plane_reproducing_examples():
    val = quad_plane(lambda z: bergman_kernel(2, z, 1j) * np.conj(bergman_kernel(2, z, 1j)), 2)
    assert val == pytest.approx(1 / (4 * math.pi), rel=1e-10)
    val = quad_plane(lambda z: bergman_kernel(4, z, 2j) * np.conj(bergman_kernel(4, z, 1j)), 4)
    assert val == pytest.approx(3 / (4 * math.pi) * 1.5**-4, rel=1e-10)
    assert quad_plane(lambda z: 0 * z, 3) == 0


def test_quad_plane_rejects_bad_weight():
    with pytest.raises(DomainError):
        quad_plane(lambda z: z, 1.0)


def test_quad_plane_slow_decay_fails_loudly():
    # |K_2|^2 integrated against the weight-4 measure is divergent at infinity
    with pytest.raises(NonConvergenceError):
        quad_plane(lambda z: np.abs(bergman_kernel(2, z, 1j)) ** 2, 4)


@pytest.mark.parametrize("order", range(6))
def test_cauchy_derivative_of_exponential(order):
    z0 = 0.3 + 1.1j
    assert cauchy_derivative(lambda z: np.exp(2 * z), z0, order) == pytest.approx(2**order * np.exp(2 * z0), rel=1e-11)

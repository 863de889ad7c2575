import math

import numpy as np
import pytest

from quadrature.rules import (
    QuadratureError,
    build_rule,
    integrate,
    moment_residual,
    tensor_rule,
)


@pytest.mark.parametrize(
    "kind,order,alpha",
    [("legendre", 64, None), ("hermite", 80, None), ("laguerre", 80, 0.0), ("laguerre", 40, 2.5)],
)
def test_moments(kind, order, alpha, tolerances):
    rule = build_rule(kind, order, alpha=alpha)
    assert moment_residual(rule) <= tolerances.quadrature


def test_periodic_integrates_trigonometric_polynomials():
    rule = build_rule("periodic", 17)
    assert abs(integrate(rule, lambda phi: np.ones_like(phi)) - 2 * math.pi) < 1e-12
    for k in range(1, 17):
        assert abs(integrate(rule, lambda phi: np.exp(1j * k * phi))) < 1e-12


def test_half_period_trapezoid_integrates_even_frequencies():
    rule = build_rule("periodic", 9, interval_scale="pi")
    assert rule.nodes[0] == 0.0
    assert rule.nodes[-1] == pytest.approx(math.pi)
    for k in range(2, 16, 2):
        assert abs(integrate(rule, lambda chi: np.exp(1j * k * chi))) < 1e-12


def test_tensor_rule_weights_multiply():
    nodes, weights = tensor_rule(build_rule("legendre", 4), build_rule("periodic", 5))
    assert len(nodes) == 2
    assert nodes[0].shape == weights.shape == (20,)
    assert weights.sum() == pytest.approx(2 * 2 * math.pi)


@pytest.mark.parametrize("order", [0, -3, 2.5])
def test_invalid_order(order):
    with pytest.raises(ValueError, match="positive integer"):
        build_rule("legendre", order)


def test_unknown_kind():
    with pytest.raises(ValueError, match="Unknown quadrature kind"):
        build_rule("chebyshev", 8)


def test_laguerre_alpha_domain():
    with pytest.raises(ValueError, match="alpha > -1"):
        build_rule("laguerre", 8, alpha=-1.0)


def test_non_finite_integrand():
    rule = build_rule("legendre", 8)
    with pytest.raises(QuadratureError, match="Non-finite"):
        integrate(rule, lambda x: 1.0 / (x - x))

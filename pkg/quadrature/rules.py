"""
Quadrature rules for the orthonormality and transform integrals.

Gauss rules come from scipy's Golub-Welsch based root finders; every rule is
validated before it is handed out, so a non-converged node search surfaces as
a QuadratureError instead of silently wrong weights.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import special

from utils.common import compensated_sum

KINDS = ("legendre", "laguerre", "hermite", "periodic")

DOMAINS = {
    "legendre": "[-1,1]",
    "laguerre": "[0,inf)",
    "hermite": "R",
    "periodic": "[0,2pi)",
}


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class QuadRule:
    kind: str
    order: int
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    domain: str
    alpha: Optional[float] = None

    def __post_init__(self):
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def length(self) -> float:
        """
        Length of the interval of a periodic rule.
        """
        if self.domain == "[0,pi]":
            return math.pi
        return 2 * math.pi

    def weight_function(self, x):
        x = np.asarray(x, dtype=float)
        if self.kind == "laguerre":
            with np.errstate(divide="ignore"):
                return np.power(x, self.alpha) * np.exp(-x)
        elif self.kind == "hermite":
            return np.exp(-x * x)
        return np.ones_like(x)


def _interval_length(interval_scale) -> Tuple[float, str]:
    if interval_scale is None or interval_scale in ("2pi", "[0,2pi)"):
        return 2 * math.pi, "[0,2pi)"
    elif interval_scale in ("pi", "[0,pi]"):
        return math.pi, "[0,pi]"
    else:
        raise ValueError(
            f"Periodic interval {interval_scale} not supported, use '2pi' or 'pi'"
        )


def _check(kind, order, nodes, weights):
    if len(nodes) != order or len(weights) != order:
        raise QuadratureError(
            f"{kind} rule of order {order} returned {len(nodes)} nodes"
        )
    if not (np.all(np.isfinite(nodes)) and np.all(np.isfinite(weights))):
        raise QuadratureError(
            f"{kind} node finding did not converge for order {order}: non-finite output"
        )
    if not np.all(weights > 0):
        raise QuadratureError(
            f"{kind} node finding did not converge for order {order}: non-positive weight"
        )


def build_rule(
    kind: str,
    order: int,
    alpha: Optional[float] = None,
    interval_scale: Optional[Union[str, float]] = None,
) -> QuadRule:
    if kind not in KINDS:
        raise ValueError(f"Unknown quadrature kind {kind}, expected one of {KINDS}")
    if int(order) != order or order < 1:
        raise ValueError(f"Quadrature order must be a positive integer, got {order}")
    order = int(order)
    domain = DOMAINS[kind]
    if kind == "legendre":
        nodes, weights = special.roots_legendre(order)
    elif kind == "laguerre":
        alpha = 0.0 if alpha is None else float(alpha)
        if not alpha > -1:
            raise ValueError(f"Laguerre rule needs alpha > -1, got {alpha}")
        try:
            nodes, weights = special.roots_genlaguerre(order, alpha)
        except (ValueError, FloatingPointError) as e:
            raise QuadratureError(
                f"laguerre node finding did not converge for order {order}: {e}"
            ) from e
    elif kind == "hermite":
        nodes, weights = special.roots_hermite(order)
    else:
        length, domain = _interval_length(interval_scale)
        if domain == "[0,pi]":
            # Trapezoid with endpoint halving
            if order == 1:
                nodes, weights = np.array([0.5 * length]), np.array([length])
            else:
                step = length / (order - 1)
                nodes = step * np.arange(order)
                weights = np.full(order, step)
                weights[0] *= 0.5
                weights[-1] *= 0.5
        else:
            nodes = length * np.arange(order) / order
            weights = np.full(order, length / order)
    nodes = np.array(nodes, dtype=float)
    weights = np.array(weights, dtype=float)
    _check(kind, order, nodes, weights)
    return QuadRule(
        kind=kind,
        order=order,
        nodes=nodes,
        weights=weights,
        domain=domain,
        alpha=alpha if kind == "laguerre" else None,
    )


def integrate(rule: QuadRule, integrand: Callable) -> complex:
    """
    Weighted node sum of a vectorised integrand. Laguerre and Hermite rules
    absorb their weight, so the integrand is the remaining factor only.
    """
    values = np.asarray(integrand(rule.nodes))
    if values.shape != rule.nodes.shape:
        values = np.broadcast_to(values, rule.nodes.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        node = rule.nodes[np.argmax(bad)]
        raise QuadratureError(f"Non-finite integrand value at node {node!r}")
    total = compensated_sum(rule.weights * values)
    return complex(total)


def tensor_rule(*rules: QuadRule) -> Tuple[Tuple[np.ndarray, ...], np.ndarray]:
    """
    Tensor-product nodes (one flattened array per dimension, ij ordering) and
    product weights.
    """
    grids = np.meshgrid(*[rule.nodes for rule in rules], indexing="ij")
    weights = np.ones(())
    for rule in rules:
        weights = np.multiply.outer(weights, rule.weights)
    return tuple(g.ravel() for g in grids), weights.ravel()


def analytic_moment(rule: QuadRule, k: int) -> float:
    if rule.kind == "legendre":
        return 0.0 if k % 2 else 2.0 / (k + 1)
    elif rule.kind == "laguerre":
        return math.gamma(k + rule.alpha + 1)
    elif rule.kind == "hermite":
        return 0.0 if k % 2 else math.gamma((k + 1) / 2)
    else:
        raise NotImplementedError(f"Monomial moments of {rule.kind} rules")


def moment_residual(rule: QuadRule, kmax: int = 20) -> float:
    """
    Max relative error of the monomial moments up to min(kmax, 2*order-1).
    Vanishing moments are compared against the sum of absolute terms.
    """
    worst = 0.0
    for k in range(min(kmax, 2 * rule.order - 1) + 1):
        terms = rule.weights * rule.nodes**k
        value = compensated_sum(terms)
        exact = analytic_moment(rule, k)
        if exact == 0.0:
            scale = max(compensated_sum(np.abs(terms)), 1.0)
        else:
            scale = abs(exact)
        worst = max(worst, abs(value - exact) / scale)
    return worst

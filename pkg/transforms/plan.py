"""
Quadrature plans realizing the measure of each family.

A plan is a tensor product of rules plus a substitution into the family's
natural coordinates. Gauss-Hermite and Gauss-Laguerre plans absorb the
square of the family's exponential factor, so kernels are evaluated
weight-stripped and plain integrands are divided by `root`.
"""
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from basis.indices import FamilyId, Window
from quadrature.rules import QuadRule, build_rule, tensor_rule

GAUSS_DEFAULTS = {"hermite": 80, "laguerre": 80, "legendre": 64}


@dataclass(frozen=True, eq=False)
class QuadPlan:
    family: FamilyId
    rules: Tuple[QuadRule, ...]
    substitutions: Tuple[str, ...]
    # node coordinates in the family's natural variables, flattened
    coords: Tuple[np.ndarray, ...] = field(repr=False)
    weights: np.ndarray = field(repr=False)
    root: Callable = field(repr=False)
    weighted_kernels: bool = True
    warnings: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.coords) != len(self.family.basis.domain):
            raise ValueError(
                f"plan of dimension {len(self.coords)} does not match the "
                f"{len(self.family.basis.domain)}-dimensional domain of {self.family}"
            )

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def orders(self) -> Tuple[int, ...]:
        return tuple(rule.order for rule in self.rules)


def _ones(*coords):
    return np.ones_like(coords[0])


def _max_frequency(window: Window, name: str) -> Fraction:
    """
    Largest |value| of an angular quantum number over the window.
    """
    basis = window.family.basis
    if not len(window):
        return Fraction(0)
    if name == "u-v":
        return max(Fraction(abs(c[0] - c[1])) for c in window.indices)
    return max(abs(basis.value(c, name)) for c in window.indices)


def _order(kind: str, minimum: int, requested: Optional[int], notes: list) -> int:
    if requested is None:
        return max(minimum, GAUSS_DEFAULTS.get(kind, minimum))
    if requested < minimum:
        message = f"{kind} order {requested} below the minimum {minimum} for this window"
        notes.append(message)
        warnings.warn(message)
    return int(requested)


def _periodic(frequency: Fraction, requested: Optional[int], notes: list) -> QuadRule:
    minimum = int(2 * frequency) + 1
    order = requested if requested is not None else minimum + 7
    if order < minimum:
        message = f"periodic order {order} below the minimum {minimum} for this window"
        notes.append(message)
        warnings.warn(message)
    return build_rule("periodic", order)


def _trapezoid(frequency: Fraction, requested: Optional[int], notes: list) -> QuadRule:
    minimum = math.ceil(frequency) + 2
    order = requested if requested is not None else minimum + 8
    if order < minimum:
        message = f"chi order {order} below the minimum {minimum} for this window"
        notes.append(message)
        warnings.warn(message)
    return build_rule("periodic", order, interval_scale="pi")


def build_plan(family: FamilyId, window: Window, order: Optional[int] = None) -> QuadPlan:
    """
    Plan for the family's measure on the window. Gauss orders default to
    GAUSS_DEFAULTS and never fall below max degree + 4 unless requested.
    """
    if window.family != family:
        raise ValueError(f"window {window} does not belong to {family}")
    notes = []
    minimum = math.ceil(window.max_degree) + 4
    tag = family.tag

    if tag == "FourierCircle":
        rule = _periodic(window.max_degree, order, notes)
        return QuadPlan(
            family, (rule,), ("phi",), (rule.nodes.copy(),), rule.weights.copy(), _ones,
            warnings=tuple(notes),
        )

    if tag == "Hermite":
        rule = build_rule("hermite", _order("hermite", minimum, order, notes))
        return QuadPlan(
            family,
            (rule,),
            ("x",),
            (rule.nodes.copy(),),
            rule.weights.copy(),
            lambda x: np.exp(-0.5 * x * x),
            weighted_kernels=False,
            warnings=tuple(notes),
        )

    if tag == "LaguerreM":
        alpha = family.alpha
        rule = build_rule("laguerre", _order("laguerre", minimum, order, notes), alpha=alpha)
        return QuadPlan(
            family,
            (rule,),
            ("y",),
            (rule.nodes.copy(),),
            rule.weights.copy(),
            lambda y: np.power(y, 0.5 * alpha) * np.exp(-0.5 * y),
            weighted_kernels=False,
            warnings=tuple(notes),
        )

    if tag == "AssocLaguerre":
        rule = build_rule("laguerre", _order("laguerre", minimum, order, notes), alpha=0.0)
        return QuadPlan(
            family,
            (rule,),
            ("x",),
            (rule.nodes.copy(),),
            rule.weights.copy(),
            lambda x: np.exp(-0.5 * x),
            weighted_kernels=False,
            warnings=tuple(notes),
        )

    if tag == "PlaneZ":
        # x = r^2, r dr dphi / pi = dx dphi / (2 pi)
        radial = build_rule("laguerre", _order("laguerre", minimum, order, notes), alpha=0.0)
        angular = _periodic(_max_frequency(window, "m"), order, notes)
        (x, phi), weights = tensor_rule(radial, angular)
        return QuadPlan(
            family,
            (radial, angular),
            ("x=r^2", "phi"),
            (np.sqrt(x), phi),
            weights / (2 * math.pi),
            lambda r, phi: np.exp(-0.5 * r * r),
            weighted_kernels=False,
            warnings=tuple(notes),
        )

    if tag == "SphericalY":
        polar = build_rule("legendre", _order("legendre", minimum, order, notes))
        angular = _periodic(window.max_degree, order, notes)
        (x, phi), weights = tensor_rule(polar, angular)
        return QuadPlan(
            family,
            (polar, angular),
            ("x=cos(theta)", "phi"),
            (np.arccos(x), phi),
            weights,
            _ones,
            warnings=tuple(notes),
        )

    if tag == "JacobiJ":
        rule = build_rule("legendre", _order("legendre", minimum, order, notes))
        return QuadPlan(
            family, (rule,), ("x",), (rule.nodes.copy(),), rule.weights.copy(), _ones,
            warnings=tuple(notes),
        )

    if tag == "HypersphereN":
        polar = build_rule("legendre", _order("legendre", minimum, order, notes))
        angular = _periodic(_max_frequency(window, "m"), order, notes)
        chi = _trapezoid(_max_frequency(window, "q"), order, notes)
        (x, phi, c), weights = tensor_rule(polar, angular, chi)
        return QuadPlan(
            family,
            (polar, angular, chi),
            ("x", "phi", "chi"),
            (x, phi, c),
            weights / (2 * math.pi**2),
            _ones,
            warnings=tuple(notes),
        )

    if tag in ("ZernikeR", "ZernikeW"):
        # x = r^2 = (t+1)/2, r dr = dt/4
        radial = build_rule("legendre", _order("legendre", minimum, order, notes))
        x = 0.5 * (radial.nodes + 1.0)
        if tag == "ZernikeR":
            return QuadPlan(
                family,
                (radial,),
                ("x=r^2",),
                (np.sqrt(x),),
                radial.weights / 4,
                _ones,
                warnings=tuple(notes),
            )
        angular = _periodic(_max_frequency(window, "u-v"), order, notes)
        (t, phi), weights = tensor_rule(radial, angular)
        return QuadPlan(
            family,
            (radial, angular),
            ("x=r^2", "phi"),
            (np.sqrt(0.5 * (t + 1.0)), phi),
            weights / 4,
            _ones,
            warnings=tuple(notes),
        )

    raise NotImplementedError(f"Quadrature plan for {family} not implemented")


# Sampling boxes on the family domains; unbounded directions are cut where
# the kernels have decayed below double precision relevance.
SAMPLE_BOXES = {
    "FourierCircle": ((0.0, 2 * math.pi),),
    "Hermite": ((-6.0, 6.0),),
    "LaguerreM": ((0.0, 30.0),),
    "AssocLaguerre": ((0.0, 30.0),),
    "PlaneZ": ((0.0, 5.0), (0.0, 2 * math.pi)),
    "SphericalY": ((0.0, math.pi), (0.0, 2 * math.pi)),
    "JacobiJ": ((-1.0, 1.0),),
    "HypersphereN": ((-1.0, 1.0), (0.0, 2 * math.pi), (0.0, math.pi)),
    "ZernikeR": ((0.0, 1.0),),
    "ZernikeW": ((0.0, 1.0), (0.0, 2 * math.pi)),
}


def sample_points(
    family: FamilyId, rng: np.random.Generator, count: int, box=None
) -> Tuple[np.ndarray, ...]:
    """
    Uniform samples on the family domain, one array per coordinate.
    """
    box = box or SAMPLE_BOXES[family.tag]
    return tuple(rng.uniform(low, high, count) for low, high in box)

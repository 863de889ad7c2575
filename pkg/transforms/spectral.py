"""
Analysis and synthesis on a finite window, and the truncated forms of the
completeness relations: Gram matrices, the reproducing-kernel projection,
round trips and Parseval.
"""
import math
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np
import torch
from torchtyping import TensorType

from algebra.coeffs import CoeffVec
from algebra.generators import OperatorExpr, interior
from basis.indices import FamilyId, Window
from quadrature.rules import QuadratureError
from transforms.plan import QuadPlan, build_plan, sample_points
from utils.common import NeumaierAccumulator

PairFilter = Callable[[Tuple[int, ...], Tuple[int, ...]], bool]


def basis_matrix(
    plan: QuadPlan, window: Window, points: Optional[Tuple[np.ndarray, ...]] = None
) -> np.ndarray:
    """
    Scaled kernels as columns, one row per point. On plan nodes the kernels
    are weight-stripped where the plan's rule absorbs the weight.
    """
    basis = window.family.basis
    if points is None:
        points, weighted = plan.coords, plan.weighted_kernels
    else:
        weighted = True
    size = len(points[0])
    columns = np.empty((size, len(window)), dtype=complex)
    for col, comp in enumerate(window.indices):
        columns[:, col] = basis.evaluate_scaled(comp, *points, weighted=weighted)
    return columns


def gram(plan: QuadPlan, window: Window) -> TensorType["index", "index"]:
    b = torch.from_numpy(basis_matrix(plan, window))
    w = torch.from_numpy(plan.weights).to(b.dtype)
    return b.conj().T @ (w[:, None] * b)


def gram_residual(
    plan: QuadPlan, window: Window, pair_filter: Optional[PairFilter] = None
) -> Tuple[float, Dict]:
    """
    max |G - I| over the index pairs accepted by pair_filter.
    """
    g = gram(plan, window)
    deviation = (g - torch.eye(len(window), dtype=g.dtype)).abs()
    if pair_filter is not None:
        mask = torch.tensor(
            [[bool(pair_filter(a, b)) for b in window.indices] for a in window.indices]
        )
        deviation = torch.where(mask, deviation, torch.zeros_like(deviation))
    worst = int(torch.argmax(deviation)) if deviation.numel() else 0
    row, col = divmod(worst, max(len(window), 1))
    details = {
        "window": window.to_text(),
        "orders": list(plan.orders),
        "size": len(window),
    }
    if len(window):
        basis = window.family.basis
        details["worst_pair"] = [
            basis.label(window.indices[row]),
            basis.label(window.indices[col]),
        ]
    if plan.warnings:
        details["warnings"] = list(plan.warnings)
    return (float(deviation.max()) if deviation.numel() else 0.0), details


def _node_values(f: Callable, plan: QuadPlan) -> np.ndarray:
    values = np.asarray(f(*plan.coords), dtype=complex)
    values = np.broadcast_to(values, plan.weights.shape)
    bad = ~np.isfinite(values)
    if np.any(bad):
        node = tuple(float(c[np.argmax(bad)]) for c in plan.coords)
        raise QuadratureError(f"Non-finite integrand value at node {node!r}")
    return values


def analyze(
    f: Callable,
    family: FamilyId,
    window: Window,
    plan: Optional[QuadPlan] = None,
    device="cpu",
    float_precision=64,
) -> CoeffVec:
    """
    Coefficients <b_i|f> by the plan's quadrature, f being evaluated at the
    nodes in the family's natural coordinates.
    """
    if window.family != family:
        raise ValueError(f"window {window} does not belong to {family}")
    plan = plan or build_plan(family, window)
    values = _node_values(f, plan) / plan.root(*plan.coords)
    b = torch.from_numpy(basis_matrix(plan, window))
    weighted = torch.from_numpy(plan.weights * values)
    amplitudes = b.conj().T @ weighted
    return CoeffVec(window, amplitudes, device=device, float_precision=float_precision)


def synthesize(v: CoeffVec, points: Tuple[np.ndarray, ...], weighted: bool = True) -> np.ndarray:
    """
    sum_i a_i b_i(points) with compensated summation.
    """
    basis = v.family.basis
    points = tuple(np.asarray(p, dtype=float) for p in points)
    if len(points) != len(basis.domain):
        raise ValueError(
            f"{v.family} takes {len(basis.domain)} coordinates "
            f"({', '.join(basis.domain)}), got {len(points)}"
        )
    shape = np.broadcast(*points).shape
    total = NeumaierAccumulator(shape)
    for comp, amplitude in v.entries().items():
        total.add(amplitude * basis.evaluate_scaled(comp, *points, weighted=weighted))
    return total.result()


def span_member(v: CoeffVec) -> Callable:
    """
    The function with coefficients v, as a pointwise callable.
    """
    return lambda *coords: synthesize(v, coords)


def _test_vector(window: Window, f_test, seed: int) -> Union[CoeffVec, Callable]:
    if f_test is None:
        from rhs.continuity import random_coeffvec

        return random_coeffvec(window, seed)
    return f_test


def kernel_projection_residual(
    family: FamilyId,
    window: Window,
    f_test: Optional[Union[CoeffVec, Callable]] = None,
    plan: Optional[QuadPlan] = None,
    probes: Optional[Tuple[np.ndarray, ...]] = None,
    count: int = 64,
    seed: int = 0,
) -> float:
    """
    max over probes of |int K_N(x, x') f(x') dmu' - f(x)| with the truncated
    reproducing kernel K_N(x, x') = sum_i b_i(x) b_i(x')^*.
    """
    plan = plan or build_plan(family, window)
    f_test = _test_vector(window, f_test, seed)
    f = span_member(f_test) if isinstance(f_test, CoeffVec) else f_test
    if probes is None:
        probes = sample_points(family, np.random.default_rng(seed), count)
    b_nodes = torch.from_numpy(basis_matrix(plan, window))
    b_probes = torch.from_numpy(basis_matrix(plan, window, probes))
    kernel = b_probes @ b_nodes.conj().T
    values = _node_values(f, plan) / plan.root(*plan.coords)
    projected = kernel @ torch.from_numpy(plan.weights * values)
    expected = torch.from_numpy(np.asarray(f(*probes), dtype=complex))
    return float((projected - expected).abs().max())


def round_trip_residual(
    family: FamilyId,
    window: Window,
    v: Optional[CoeffVec] = None,
    plan: Optional[QuadPlan] = None,
    seed: int = 0,
) -> float:
    """
    l-infinity distance between v and analyze(synthesize(v)).
    """
    plan = plan or build_plan(family, window)
    v = _test_vector(window, v, seed)
    recovered = analyze(span_member(v), family, window, plan)
    return float((recovered.amplitudes - v.amplitudes).abs().max())


def parseval_residual(
    family: FamilyId,
    window: Window,
    v: Optional[CoeffVec] = None,
    plan: Optional[QuadPlan] = None,
    seed: int = 0,
) -> float:
    """
    |int |f|^2 dmu - sum |a|^2| for f in the truncated span.
    """
    plan = plan or build_plan(family, window)
    v = _test_vector(window, v, seed)
    stripped = synthesize(v, plan.coords, weighted=plan.weighted_kernels)
    integral = math.fsum(plan.weights * np.abs(stripped) ** 2)
    return abs(integral - v.norm0() ** 2)


def multiplication_residual(
    expr: OperatorExpr,
    multiplier: Callable,
    window: Window,
    plan: Optional[QuadPlan] = None,
) -> Tuple[float, Dict]:
    """
    Compares the matrix of a multiplicative operator, computed by quadrature
    as <b_j| multiplier |b_i>, with the matrix of its shift-rule expression
    on the interior columns.
    """
    plan = plan or build_plan(window.family, window)
    b = torch.from_numpy(basis_matrix(plan, window))
    factor = torch.from_numpy(
        plan.weights * np.asarray(multiplier(*plan.coords), dtype=complex)
    )
    quadrature = b.conj().T @ (factor[:, None] * b)
    matrix, overflow = OperatorExpr.of(expr).matrix(window)
    keep = interior(overflow)
    residual = float((quadrature - matrix)[:, keep].abs().max())
    return residual, {"interior": int(keep.sum()), "window": window.to_text()}

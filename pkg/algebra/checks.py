"""
Residuals of the algebraic relations on a finite window.

Every check builds the dense matrix of an operator expression on the window
and measures it on the interior columns only, i.e. the basis vectors whose
images are computed without truncation. Each function returns the residual
together with a details dict for the report.
"""
from typing import Callable, Dict, Optional, Tuple, Union

import torch

from algebra.generators import (
    EmptyInteriorError,
    GeneratorSpec,
    OperatorExpr,
    interior,
)
from algebra.tables import Algebra, Casimir, get_algebra
from basis.indices import Window

Operator = Union[GeneratorSpec, OperatorExpr]


def _masked_residual(
    expr: OperatorExpr,
    window: Window,
    columns: Optional[Callable] = None,
) -> Tuple[float, int]:
    """
    max over interior columns of the sup norm of expr e_i.
    """
    matrix, overflow = expr.matrix(window)
    keep = interior(overflow)
    if columns is not None:
        selected = torch.tensor(
            [bool(columns(comp)) for comp in window.indices], device=keep.device
        )
        keep = keep & selected
        if not torch.any(keep):
            raise EmptyInteriorError(f"no interior column of {window} passes the filter")
    residual = matrix[:, keep].abs().max() if matrix.numel() else torch.tensor(0.0)
    return float(residual), int(keep.sum())


def commutator_residual(
    g_a: Operator, g_b: Operator, expected: Operator, window: Window
) -> Tuple[float, Dict]:
    a, b = OperatorExpr.of(g_a), OperatorExpr.of(g_b)
    expr = a * b - b * a - OperatorExpr.of(expected)
    residual, count = _masked_residual(expr, window)
    return residual, {"interior": count, "window": window.to_text()}


def composition_residual(
    expr: Operator,
    target: Operator,
    window: Window,
    columns: Optional[Callable] = None,
) -> Tuple[float, Dict]:
    """
    Residual of expr - target; with target zero this checks an identity.
    """
    difference = OperatorExpr.of(expr) - OperatorExpr.of(target)
    residual, count = _masked_residual(difference, window, columns)
    return residual, {"interior": count, "window": window.to_text()}


def casimir_residual(
    algebra: Union[str, Algebra],
    window: Window,
    casimir: Optional[Casimir] = None,
    alpha: Optional[float] = None,
) -> Tuple[float, Dict]:
    """
    Max deviation of the Casimir image of each interior basis vector from
    its predicted scalar multiple, with the observed eigenvalue range.
    """
    if isinstance(algebra, str):
        algebra = get_algebra(algebra, alpha)
    casimirs = [casimir] if casimir is not None else algebra.casimirs()
    if not casimirs:
        raise ValueError(f"{algebra.tag} has no Casimir operator")
    worst = 0.0
    report = {}
    for item in casimirs:
        matrix, overflow = item.expression.matrix(window)
        keep = interior(overflow)
        predicted = torch.tensor(
            [complex(item.predicted(comp)) for comp in window.indices],
            dtype=matrix.dtype,
            device=matrix.device,
        )
        deviation = matrix - torch.diag(predicted)
        worst = max(worst, float(deviation[:, keep].abs().max()))
        observed = torch.diagonal(matrix)[keep].real
        report[item.label] = {
            "eigenvalue_min": float(observed.min()),
            "eigenvalue_max": float(observed.max()),
            "predicted_min": float(predicted[keep].real.min()),
            "predicted_max": float(predicted[keep].real.max()),
            "interior": int(keep.sum()),
        }
    return worst, report


def weight_shift(g: GeneratorSpec, cartan: GeneratorSpec, window: Window) -> float:
    """
    Shift of g in the eigenvalue of cartan, read off a column g does not
    annihilate.
    """
    for comp in window.indices:
        for target, _ in g.image(comp):
            return float(cartan.eigenvalue(target) - cartan.eigenvalue(comp))
    return 0.0


def cartan_weight_residual(
    g: GeneratorSpec, cartan: GeneratorSpec, window: Window
) -> Tuple[float, Dict]:
    if not cartan.is_diagonal:
        raise ValueError(f"{cartan.name} is not diagonal")
    delta = weight_shift(g, cartan, window)
    c, x = OperatorExpr.of(cartan), OperatorExpr.of(g)
    expr = c * x - x * c - delta * x
    residual, count = _masked_residual(expr, window)
    return residual, {"delta": delta, "interior": count, "window": window.to_text()}


def adjoint_pair_residual(
    g_plus: Operator, g_minus: Operator, window: Window
) -> Tuple[float, Dict]:
    """
    max |<g+ e_i, e_j> - <e_i, g- e_j>| over window pairs whose images both
    stay inside the window.
    """
    plus, minus = OperatorExpr.of(g_plus), OperatorExpr.of(g_minus)
    if plus.family != minus.family:
        raise ValueError(f"{plus.family} and {minus.family} differ")
    m_plus, o_plus = plus.matrix(window)
    m_minus, o_minus = minus.matrix(window)
    # entry (j, i) compares <g+ e_i, e_j> with <e_i, g- e_j>
    difference = m_plus - m_minus.conj().T
    rows, cols = ~o_minus, ~o_plus
    pairs = int(rows.sum()) * int(cols.sum())
    if pairs == 0:
        raise EmptyInteriorError(f"no complete index pair in {window}")
    residual = float(difference[rows][:, cols].abs().max())
    return residual, {"pairs": pairs, "window": window.to_text()}

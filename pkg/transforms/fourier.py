"""
The regular representation of SO(2) on circle coefficients and the Fourier
eigenrelation of the Hermite functions.
"""
import math
from typing import Dict, Optional, Tuple

import numpy as np
import torch

from algebra.coeffs import CoeffVec
from basis.hermite import eval_hermite
from quadrature.rules import build_rule
from transforms.spectral import synthesize

# Residuals at or below this level count as converged when comparing orders
CONVERGED = 1e-12


def rotate_circle(v: CoeffVec, theta: float) -> CoeffVec:
    """
    a_m -> exp(i m theta) a_m, so that the synthesized function moves from
    f(phi) to f(phi - theta).
    """
    if v.family.tag != "FourierCircle":
        raise ValueError(f"rotation acts on FourierCircle coefficients, got {v.family}")
    m = torch.tensor([c[0] for c in v.window.indices], dtype=v.float, device=v.device)
    phases = torch.exp(1j * theta * m)
    return CoeffVec(v.window, phases * v.amplitudes, device=v.device, float_precision=v.float)


def rotation_covariance_residual(
    v: CoeffVec, theta: float, points: Optional[np.ndarray] = None
) -> float:
    """
    max |synthesize(rotate(v, theta))(phi) - synthesize(v)(phi - theta)|.
    """
    if points is None:
        points = np.linspace(0.0, 2 * math.pi, 97, endpoint=False)
    points = np.asarray(points, dtype=float)
    rotated = synthesize(rotate_circle(v, theta), (points,))
    shifted = synthesize(v, (np.mod(points - theta, 2 * math.pi),))
    return float(np.max(np.abs(rotated - shifted)))


def hermite_transform(n: int, p: np.ndarray, order: int) -> np.ndarray:
    """
    (1/sqrt(2 pi)) int exp(-i p x) psi_n(x) dx by Gauss-Hermite under
    x = sqrt(2) t, where psi_n(x) dx = sqrt(2) exp(-t^2) psi~_n(sqrt(2) t) dt.
    """
    rule = build_rule("hermite", order)
    x = math.sqrt(2.0) * rule.nodes
    stripped = eval_hermite(n, x, weighted=False)
    phases = np.exp(-1j * np.outer(p, x))
    return math.sqrt(2.0) / math.sqrt(2 * math.pi) * (phases @ (rule.weights * stripped))


def hermite_ft_residual(
    n: int,
    order: Optional[int] = None,
    p: Optional[np.ndarray] = None,
) -> Tuple[float, Dict]:
    """
    max over the p grid of |F[psi_n](p) - (-i)^n psi_n(p)|, with the same
    quantity at twice the order as a self-consistency check.
    """
    if n < 0:
        raise ValueError(f"n >= 0 violated (n={n})")
    order = order or 4 * n + 40
    p = np.linspace(-4.0, 4.0, 81) if p is None else np.asarray(p, dtype=float)
    expected = (-1j) ** n * eval_hermite(n, p)
    coarse = hermite_transform(n, p, order)
    fine = hermite_transform(n, p, 2 * order)
    residual = float(np.max(np.abs(coarse - expected)))
    doubled = float(np.max(np.abs(fine - expected)))
    return residual, {
        "n": n,
        "order": order,
        "doubled_order": 2 * order,
        "doubled_residual": doubled,
        "self_consistency": float(np.max(np.abs(fine - coarse))),
        "monotone": doubled <= max(residual, CONVERGED),
    }

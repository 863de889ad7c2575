"""
Identities tying the families to each other, the printed symmetries, and
the recurrence evaluators against exact-coefficient oracles.
"""
import math
from fractions import Fraction
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.special import gammaln, lpmv

from basis.hermite import eval_hermite, hermite_exact
from basis.jacobi import eval_jacobi_J
from basis.laguerre import (
    eval_assoc_laguerre,
    eval_plane_z,
    laguerre_coefficients,
    laguerre_polynomial,
)
from basis.odes import jacobi_polynomial
from basis.spherical import assoc_legendre
from basis.zernike import check_zernike_index, eval_zernike_W, zernike_radial

RELATIONS = ("legendre_jacobi", "zernike_jacobi", "plane_z_consistency")
SYMMETRIES = (
    "Eq68-assoc-laguerre-reflection",
    "Eq161-jacobi-mq-swap",
    "Eq200-zernike-reflection",
    "Eq210-zernike-w-conjugation",
)
ORACLES = ("hermite", "laguerre", "legendre")


def _max_abs(values) -> float:
    values = np.asarray(values)
    return float(np.max(np.abs(values))) if values.size else 0.0


def _relative(lhs, rhs) -> float:
    return _max_abs(np.asarray(lhs) - np.asarray(rhs)) / max(1.0, _max_abs(lhs))


def _legendre_jacobi(params, points) -> Tuple[float, Dict]:
    """
    P_l^m(x) = (-1)^m sqrt((l+m)!/(l-m)!) J_l^{m,0}(x).
    """
    l, m = int(params["l"]), int(params["m"])
    x = np.linspace(-1.0, 1.0, 200) if points is None else np.asarray(points, dtype=float)
    lhs = assoc_legendre(l, m, x)
    factor = (-1) ** (m % 2) * math.exp(0.5 * (gammaln(l + m + 1) - gammaln(l - m + 1)))
    rhs = factor * eval_jacobi_J(2 * l, 2 * m, 0, x)
    return _relative(lhs, rhs), {"l": l, "m": m}


def _zernike_jacobi(params, points) -> Tuple[float, Dict]:
    """
    R_n^m(r) = (-1)^((n-m)/2) r^m P_{(n-m)/2}^{(m,0)}(1 - 2r^2), with the
    degree read as (n-m)/2. The reading with degree n is reported alongside.
    """
    n, m = int(params["n"]), int(params["m"])
    check_zernike_index(n, m)
    mu = abs(m)
    half = (n - mu) // 2
    r = np.linspace(0.0, 1.0, 200) if points is None else np.asarray(points, dtype=float)
    lhs = zernike_radial(n, m, r)
    argument = 1.0 - 2.0 * r * r
    rhs = (-1) ** half * np.power(r, mu) * jacobi_polynomial(half, mu, 0, argument)
    printed = (-1) ** half * np.power(r, mu) * jacobi_polynomial(n, mu, 0, argument)
    return _max_abs(lhs - rhs), {
        "n": n,
        "m": m,
        "as_printed_residual": _max_abs(lhs - printed),
    }


def _plane_z_consistency(params, points) -> Tuple[float, Dict]:
    """
    Z_j^m(r, phi) = exp(i m phi) L_j^m(r^2), and Z_j^m(r, phi + 2 pi) =
    (-1)^(2j) Z_j^m(r, phi).
    """
    tj, tm = int(params["tj"]), int(params["tm"])
    if points is None:
        rng = np.random.default_rng(int(params.get("seed", 0)))
        r, phi = rng.uniform(0.0, 4.0, 200), rng.uniform(0.0, 2 * math.pi, 200)
    else:
        r, phi = (np.asarray(p, dtype=float) for p in points)
    z = eval_plane_z(tj, tm, r, phi)
    direct = np.exp(0.5j * tm * phi) * eval_assoc_laguerre(tj, tm, r * r)
    sign = -1.0 if tj % 2 else 1.0
    periodic = eval_plane_z(tj, tm, r, phi + 2 * math.pi) - sign * z
    consistency = _max_abs(z - direct)
    periodicity = _max_abs(periodic)
    return max(consistency, periodicity), {
        "tj": tj,
        "tm": tm,
        "consistency": consistency,
        "periodicity": periodicity,
    }


def cross_family_residual(
    relation: str, params: Dict, points=None
) -> Tuple[float, Dict]:
    if relation == "legendre_jacobi":
        return _legendre_jacobi(params, points)
    elif relation == "zernike_jacobi":
        return _zernike_jacobi(params, points)
    elif relation == "plane_z_consistency":
        return _plane_z_consistency(params, points)
    raise ValueError(f"unknown relation {relation}, expected one of {RELATIONS}")


def symmetry_residual(name: str, params: Dict, seed: int = 0, count: int = 200) -> float:
    """
    Pointwise residual of one printed symmetry on random points.
    """
    rng = np.random.default_rng(seed)
    if name == "Eq68-assoc-laguerre-reflection":
        tj, tm = int(params["tj"]), int(params["tm"])
        x = rng.uniform(0.0, 20.0, count)
        sign = -1.0 if tj % 2 else 1.0
        return _max_abs(eval_assoc_laguerre(tj, tm, x) - sign * eval_assoc_laguerre(tj, -tm, x))
    elif name == "Eq161-jacobi-mq-swap":
        tj, tm, tq = int(params["tj"]), int(params["tm"]), int(params["tq"])
        x = rng.uniform(-1.0, 1.0, count)
        return _max_abs(eval_jacobi_J(tj, tm, tq, x) - eval_jacobi_J(tj, tq, tm, x))
    elif name == "Eq200-zernike-reflection":
        n, m = int(params["n"]), int(params["m"])
        r = rng.uniform(0.0, 1.0, count)
        reflection = _max_abs(zernike_radial(n, m, r) - zernike_radial(n, -m, r))
        edge = abs(float(zernike_radial(n, m, 1.0)) - 1.0)
        return max(reflection, edge)
    elif name == "Eq210-zernike-w-conjugation":
        u, v = int(params["u"]), int(params["v"])
        r = rng.uniform(0.0, 1.0, count)
        phi = rng.uniform(0.0, 2 * math.pi, count)
        w = eval_zernike_W(u, v, r, phi)
        return max(
            _max_abs(eval_zernike_W(v, u, r, phi) - np.conj(w)),
            _max_abs(eval_zernike_W(u, v, r, -phi) - np.conj(w)),
        )
    raise ValueError(f"unknown symmetry {name}, expected one of {SYMMETRIES}")


def _exact_polyval(coeffs, t: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * t + c
    return total


def recurrence_residual(
    kind: str, degree: int, order: int = 0, points: Optional[np.ndarray] = None
) -> float:
    """
    Recurrence evaluation against a direct exact-coefficient evaluation,
    relative to max(1, max |oracle|). order is alpha for Laguerre and m for
    Legendre.
    """
    if kind == "hermite":
        x = np.linspace(-5.0, 5.0, 101) if points is None else np.asarray(points, dtype=float)
        oracle = hermite_exact(degree, x)
        value = eval_hermite(degree, x)
    elif kind == "laguerre":
        x = np.linspace(0.0, 10.0, 101) if points is None else np.asarray(points, dtype=float)
        coeffs = laguerre_coefficients(degree, Fraction(order))
        oracle = np.array([float(_exact_polyval(coeffs, Fraction(float(t)))) for t in x])
        value = laguerre_polynomial(degree, float(order), x)
    elif kind == "legendre":
        x = np.linspace(-1.0, 1.0, 101) if points is None else np.asarray(points, dtype=float)
        oracle = lpmv(order, degree, x)
        value = assoc_legendre(degree, order, x)
    else:
        raise ValueError(f"unknown recurrence oracle {kind}, expected one of {ORACLES}")
    return _max_abs(value - oracle) / max(1.0, _max_abs(oracle))

"""
Differential-equation residuals of the kernel families at interior points,
with derivatives from Richardson-extrapolated 5-point differences.

Every residual is relative: max |sum of terms| / max sum of |terms|.
"""
import math

import numpy as np

from basis.hermite import eval_hermite
from basis.jacobi import eval_jacobi_J, generalized_binomial
from basis.laguerre import eval_assoc_laguerre, laguerre_polynomial
from basis.spherical import assoc_legendre
from basis.zernike import zernike_radial
from utils.common import richardson_derivative

STEP = 1e-3


def relative_residual(*terms) -> float:
    terms = [np.asarray(t) for t in terms]
    total = np.abs(sum(terms))
    scale = np.max(sum(np.abs(t) for t in terms))
    if scale == 0:
        return 0.0
    return float(np.max(total) / scale)


def _derivatives(f, x, h=STEP):
    d1, _ = richardson_derivative(f, x, order=1, h=h)
    d2, _ = richardson_derivative(f, x, order=2, h=h)
    return f(np.asarray(x, dtype=float)), d1, d2


def laguerre_ode_residual(n: int, alpha: float, y) -> float:
    y = np.asarray(y, dtype=float)
    f, d1, d2 = _derivatives(lambda z: laguerre_polynomial(n, alpha, z), y)
    return relative_residual(y * d2, (1 + alpha - y) * d1, n * f)


def assoc_laguerre_ode_residual(tj: int, tm: int, x) -> float:
    x = np.asarray(x, dtype=float)
    j, m = tj / 2, tm / 2
    f, d1, d2 = _derivatives(lambda z: eval_assoc_laguerre(tj, tm, z), x)
    return relative_residual(x * d2, d1, -(m * m) / x * f, -x / 4 * f, (j + 0.5) * f)


def plane_radial_ode_residual(tj: int, tm: int, r) -> float:
    r = np.asarray(r, dtype=float)
    j, m = tj / 2, tm / 2
    f, d1, d2 = _derivatives(lambda z: eval_assoc_laguerre(tj, tm, z * z), r)
    return relative_residual(
        d2, d1 / r, -4 * m * m / (r * r) * f, -r * r * f, 4 * (j + 0.5) * f
    )


def hermite_ode_residual(n: int, x) -> float:
    x = np.asarray(x, dtype=float)
    f, _, d2 = _derivatives(lambda z: eval_hermite(n, z), x)
    return relative_residual(d2, (2 * n + 1) * f, -x * x * f)


def legendre_ode_residual(l: int, m: int, x) -> float:
    x = np.asarray(x, dtype=float)
    f, d1, d2 = _derivatives(lambda z: assoc_legendre(l, m, z), x)
    return relative_residual(
        (1 - x * x) * d2, -2 * x * d1, l * (l + 1) * f, -(m * m) / (1 - x * x) * f
    )


def jacobi_polynomial(n: int, alpha: int, beta: int, x):
    """
    Jacobi polynomial P_n^(alpha,beta) from its finite binomial sum; integer
    alpha, beta with n+alpha, n+beta >= 0.
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for s in range(n + 1):
        coeff = generalized_binomial(n + alpha, s) * generalized_binomial(
            n + beta, n - s
        )
        if coeff:
            total = total + float(coeff) * (0.5 * (x - 1)) ** (n - s) * (
                0.5 * (x + 1)
            ) ** s
    return total


def jacobi_polynomial_ode_residual(tj: int, tm: int, tq: int, x) -> float:
    x = np.asarray(x, dtype=float)
    n = (tj - tm) // 2
    alpha, beta = (tm + tq) // 2, (tm - tq) // 2
    f, d1, d2 = _derivatives(lambda z: jacobi_polynomial(n, alpha, beta, z), x)
    return relative_residual(
        (1 - x * x) * d2,
        (beta - alpha - (alpha + beta + 2) * x) * d1,
        n * (n + alpha + beta + 1) * f,
    )


def jacobi_ode_residual(tj: int, tm: int, tq: int, x) -> float:
    x = np.asarray(x, dtype=float)
    j, m, q = tj / 2, tm / 2, tq / 2
    f, d1, d2 = _derivatives(lambda z: eval_jacobi_J(tj, tm, tq, z), x)
    return relative_residual(
        -(1 - x * x) * d2,
        2 * x * d1,
        (2 * m * q * x + m * m + q * q) / (1 - x * x) * f,
        -j * (j + 1) * f,
    )


def zernike_ode_residual(n: int, m: int, r) -> float:
    r = np.asarray(r, dtype=float)
    f, d1, d2 = _derivatives(lambda z: zernike_radial(n, m, z), r)
    return relative_residual(
        (1 - r * r) * d2, -(3 * r - 1 / r) * d1, n * (n + 2) * f, -(m * m) / (r * r) * f
    )


ODES = {
    "Eq37-laguerre-ode": laguerre_ode_residual,
    "Eq40-assoc-laguerre-ode": assoc_laguerre_ode_residual,
    "Eq50-plane-radial-ode": plane_radial_ode_residual,
    "Eq156-jacobi-polynomial-ode": jacobi_polynomial_ode_residual,
    "Eq161-jacobi-ode": jacobi_ode_residual,
    "Eq199-zernike-ode": zernike_ode_residual,
    "hermite-ode": hermite_ode_residual,
    "legendre-ode": legendre_ode_residual,
}

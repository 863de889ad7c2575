"""
Laguerre families: the su(1,1) functions M_n^alpha on the half line, the
associated functions L_j^m of the su(2) construction and their plane
counterparts Z_j^m(r, phi) = exp(i m phi) L_j^m(r^2).
"""
import math
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from basis.base import Basis
from basis.indices import IndexConstraintError


def laguerre_polynomial(n: int, alpha: float, y):
    """
    Generalised Laguerre polynomial L_n^alpha by the three-term recurrence
    in n.
    """
    y = np.asarray(y, dtype=float)
    previous = np.zeros_like(y)
    current = np.ones_like(y)
    for k in range(n):
        following = ((2 * k + 1 + alpha - y) * current - (k + alpha) * previous) / (
            k + 1
        )
        previous, current = current, following
    return current


def laguerre_coefficients(n: int, alpha):
    """
    Exact coefficients of L_n^alpha, lowest power first:
    (-1)^k C(n+alpha, n-k) / k!. alpha must be rational (int or Fraction).
    """
    alpha = Fraction(alpha)
    coeffs = []
    for k in range(n + 1):
        binom = Fraction(1)
        # C(n+alpha, n-k) = prod_{i=1}^{n-k} (k+alpha+i)/i
        for i in range(1, n - k + 1):
            binom *= (k + alpha + i) / i
        coeffs.append((-1) ** k * binom / math.factorial(k))
    return coeffs


def eval_laguerre_M(n: int, alpha: float, y, weighted: bool = True):
    """
    M_n^alpha(y) = sqrt(n!/Gamma(n+alpha+1)) y^(alpha/2) exp(-y/2) L_n^alpha(y).
    weighted=False drops y^(alpha/2) exp(-y/2).
    """
    if n < 0:
        raise IndexConstraintError(f"n >= 0 violated (n={n})")
    if not alpha > -1:
        raise IndexConstraintError(f"alpha > -1 violated (alpha={alpha})")
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise ValueError("y >= 0 violated")
    prefactor = math.exp(0.5 * (gammaln(n + 1) - gammaln(n + alpha + 1)))
    value = prefactor * laguerre_polynomial(n, alpha, y)
    if weighted:
        with np.errstate(divide="ignore"):
            value = value * np.power(y, 0.5 * alpha) * np.exp(-0.5 * y)
    return value


def check_assoc_index(tj: int, tm: int):
    if tj < 0:
        raise IndexConstraintError(f"j >= 0 violated (2j={tj})")
    if abs(tm) > tj:
        raise IndexConstraintError(f"|m| <= j violated (2j={tj}, 2m={tm})")
    if (tj - tm) % 2:
        raise IndexConstraintError(f"j - m integer violated (2j={tj}, 2m={tm})")


def eval_assoc_laguerre(tj: int, tm: int, x, weighted: bool = True):
    """
    L_j^m(x) from doubled (2j, 2m). Only non-negative Laguerre orders are
    evaluated: L_j^{-mu} = M_{j-mu}^{2 mu} for mu >= 0, and the m > 0 branch
    goes through L_j^m = (-1)^{2j} L_j^{-m}.
    weighted=False drops exp(-x/2).
    """
    check_assoc_index(tj, tm)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("x >= 0 violated")
    order = abs(tm)  # 2 mu
    n = (tj - order) // 2
    prefactor = math.exp(0.5 * (gammaln(n + 1) - gammaln(n + order + 1)))
    value = prefactor * np.power(x, 0.5 * order) * laguerre_polynomial(n, order, x)
    if weighted:
        value = value * np.exp(-0.5 * x)
    if tm > 0 and tj % 2:
        value = -value
    return value


def eval_plane_z(tj: int, tm: int, r, phi, weighted: bool = True):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r >= 0 violated")
    phase = np.exp(0.5j * tm * np.asarray(phi, dtype=float))
    return phase * eval_assoc_laguerre(tj, tm, r * r, weighted=weighted)


def lemma_bound(tj: int, tm: int) -> float:
    """
    Pointwise bound of |Z_j^m|: 2^(3|m|) (j!)^2 sqrt((j+|m|)!) / (|m|! ((j-|m|)!)^(5/2)).
    """
    j, m = tj / 2, abs(tm) / 2
    log_bound = (
        3 * m * math.log(2)
        + 2 * gammaln(j + 1)
        + 0.5 * gammaln(j + m + 1)
        - gammaln(m + 1)
        - 2.5 * gammaln(j - m + 1)
    )
    return math.exp(log_bound)


class LaguerreMBasis(Basis):
    tag = "LaguerreM"
    names = ("n",)
    degree_name = "n"
    domain = ("y",)
    measure = "dy"

    def check(self, comp):
        if comp[0] < 0:
            raise IndexConstraintError(f"n >= 0 violated (n={comp[0]})")

    def degree(self, comp):
        return Fraction(comp[0])

    def candidates(self, max_degree):
        for n in range(int(max_degree) + 1):
            yield (n,)

    def evaluate(self, comp, y, weighted=True):
        return eval_laguerre_M(comp[0], self.alpha, y, weighted=weighted)


class AssocLaguerreBasis(Basis):
    tag = "AssocLaguerre"
    names = ("j", "m")
    doubled = ("j", "m")
    degree_name = "j"
    domain = ("x",)
    measure = "dx"

    def check(self, comp):
        check_assoc_index(*comp)

    def degree(self, comp):
        return Fraction(comp[0], 2)

    def candidates(self, max_degree):
        for tj in range(int(2 * max_degree) + 1):
            for tm in range(-tj, tj + 1, 2):
                yield (tj, tm)

    def evaluate(self, comp, x, weighted=True):
        return eval_assoc_laguerre(comp[0], comp[1], x, weighted=weighted)


class PlaneZBasis(AssocLaguerreBasis):
    tag = "PlaneZ"
    domain = ("r", "phi")
    measure = "r dr dphi/pi"

    def evaluate(self, comp, r, phi, weighted=True):
        return eval_plane_z(comp[0], comp[1], r, phi, weighted=weighted)

"""
Algebraic Jacobi functions J_j^{m,q}(x) and the hypersphere functions
N_j^{m,q}(x, phi, chi) = sqrt(j+1/2) J_j^{m,q}(x) exp(i m phi) exp(i q chi).
"""
import math
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from basis.base import Basis
from basis.indices import IndexConstraintError
from utils.common import NeumaierAccumulator

MAX_DEGREE = 50


def check_jacobi_index(tj: int, tm: int, tq: int):
    if tj < 0:
        raise IndexConstraintError(f"j >= 0 violated (2j={tj})")
    if abs(tm) > tj:
        raise IndexConstraintError(f"j >= |m| violated (2j={tj}, 2m={tm})")
    if abs(tq) > tj:
        raise IndexConstraintError(f"j >= |q| violated (2j={tj}, 2q={tq})")
    if (tj - tm) % 2:
        raise IndexConstraintError(f"j - m integer violated (2j={tj}, 2m={tm})")
    if (tj - tq) % 2:
        raise IndexConstraintError(f"j - q integer violated (2j={tj}, 2q={tq})")


def generalized_binomial(a: int, k: int) -> int:
    """
    Binomial coefficient with integer top a >= 0; zero outside 0 <= k <= a.
    """
    if k < 0 or k > a:
        return 0
    return math.comb(a, k)


def eval_jacobi_J(tj: int, tm: int, tq: int, x):
    """
    J_j^{m,q}(x) from the finite sum over s of
    C(j+q, s) C(j-q, n-s) (-1)^(n-s) ((1+x)/2)^(s+beta/2) ((1-x)/2)^(n-s+alpha/2)
    with n = j-m, alpha = m+q, beta = m-q, times
    sqrt((j+m)!(j-m)!/((j+q)!(j-q)!)). Every exponent is non-negative on the
    terms that survive.
    """
    check_jacobi_index(tj, tm, tq)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise ValueError("|x| <= 1 violated")
    n = (tj - tm) // 2
    if n > MAX_DEGREE:
        raise ValueError(f"j - m <= {MAX_DEGREE} violated (out of supported range)")
    alpha = (tm + tq) // 2
    beta = (tm - tq) // 2
    top_a = (tj + tq) // 2  # n + alpha
    top_b = (tj - tq) // 2  # n + beta
    u = 0.5 * (1.0 + x)
    w = 0.5 * (1.0 - x)
    total = NeumaierAccumulator(x.shape, complex_values=False)
    for s in range(n + 1):
        coeff = generalized_binomial(top_a, s) * generalized_binomial(top_b, n - s)
        if coeff == 0:
            continue
        sign = -1.0 if (n - s) % 2 else 1.0
        term = (
            sign
            * float(coeff)
            * np.power(u, s + 0.5 * beta)
            * np.power(w, n - s + 0.5 * alpha)
        )
        total.add(term)
    j, m, q = tj / 2, tm / 2, tq / 2
    prefactor = math.exp(
        0.5
        * (
            gammaln(j + m + 1)
            + gammaln(j - m + 1)
            - gammaln(j + q + 1)
            - gammaln(j - q + 1)
        )
    )
    return prefactor * total.result()


def eval_jacobi(tj: int, tm: int, tq: int, x, phi=None, chi=None, variant: str = "J"):
    if variant == "J":
        return eval_jacobi_J(tj, tm, tq, x)
    elif variant == "N":
        if phi is None or chi is None:
            raise ValueError("variant N needs phi and chi")
        phase = np.exp(0.5j * tm * np.asarray(phi, dtype=float)) * np.exp(
            0.5j * tq * np.asarray(chi, dtype=float)
        )
        return math.sqrt(tj / 2 + 0.5) * eval_jacobi_J(tj, tm, tq, x) * phase
    else:
        raise NotImplementedError(f"Jacobi variant {variant} not implemented")


class JacobiJBasis(Basis):
    tag = "JacobiJ"
    names = ("j", "m", "q")
    doubled = ("j", "m", "q")
    degree_name = "j"
    domain = ("x",)
    measure = "dx"

    def check(self, comp):
        check_jacobi_index(*comp)

    def degree(self, comp):
        return Fraction(comp[0], 2)

    def candidates(self, max_degree):
        for tj in range(int(2 * max_degree) + 1):
            for tm in range(-tj, tj + 1, 2):
                for tq in range(-tj, tj + 1, 2):
                    yield (tj, tm, tq)

    def scale(self, comp):
        return math.sqrt(comp[0] / 2 + 0.5)

    def evaluate(self, comp, x, weighted=True):
        return eval_jacobi_J(*comp, x)


class HypersphereNBasis(JacobiJBasis):
    tag = "HypersphereN"
    domain = ("x", "phi", "chi")
    measure = "dphi dchi dx/(2 pi^2)"

    def scale(self, comp):
        return 1.0

    def evaluate(self, comp, x, phi, chi, weighted=True):
        return eval_jacobi(*comp, x, phi, chi, variant="N")

import math
from fractions import Fraction

import numpy as np

from basis.base import Basis
from basis.indices import IndexConstraintError


def eval_hermite(n: int, x, weighted: bool = True):
    """
    Normalised Hermite function psi_n by the stable three-term recurrence.
    weighted=False drops the gaussian factor exp(-x^2/2).
    """
    if n < 0:
        raise IndexConstraintError(f"n >= 0 violated (n={n})")
    x = np.asarray(x, dtype=float)
    seed = math.pi**-0.25
    current = np.full(x.shape, seed)
    if weighted:
        current = current * np.exp(-0.5 * x * x)
    previous = np.zeros_like(current)
    for k in range(n):
        following = (
            math.sqrt(2.0 / (k + 1)) * x * current - math.sqrt(k / (k + 1)) * previous
        )
        previous, current = current, following
    return current


def hermite_coefficients(n: int):
    """
    Exact integer coefficients of the physicists' H_n, lowest power first.
    """
    previous, current = [0], [1]
    for k in range(n):
        following = [0] * (k + 2)
        for power, c in enumerate(current):
            following[power + 1] += 2 * c
        for power, c in enumerate(previous):
            following[power] -= 2 * k * c
        previous, current = current, following
    return current


def hermite_exact(n: int, x):
    """
    Direct psi_n from exact H_n coefficients; the recurrence oracle.
    """
    x = np.asarray(x, dtype=float)
    coeffs = hermite_coefficients(n)
    poly = np.polynomial.polynomial.polyval(x, [float(c) for c in coeffs])
    norm = math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))
    return poly * np.exp(-0.5 * x * x) / norm


class HermiteBasis(Basis):
    tag = "Hermite"
    names = ("n",)
    degree_name = "n"
    domain = ("x",)
    measure = "dx"

    def check(self, comp):
        if comp[0] < 0:
            raise IndexConstraintError(f"n >= 0 violated (n={comp[0]})")

    def degree(self, comp):
        return Fraction(comp[0])

    def candidates(self, max_degree):
        for n in range(int(max_degree) + 1):
            yield (n,)

    def evaluate(self, comp, x, weighted=True):
        return eval_hermite(comp[0], x, weighted=weighted)

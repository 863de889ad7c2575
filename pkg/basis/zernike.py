import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from basis.base import Basis
from basis.indices import IndexConstraintError
from utils.common import compensated_horner


def check_zernike_index(n: int, m: int):
    if n < 0:
        raise IndexConstraintError(f"n >= 0 violated (n={n})")
    if abs(m) > n:
        raise IndexConstraintError(f"|m| <= n violated (n={n}, m={m})")
    if (n - abs(m)) % 2:
        raise IndexConstraintError(f"(n - |m|)/2 integer violated (n={n}, m={m})")


@lru_cache(maxsize=None)
def zernike_coefficients(n: int, m: int):
    """
    Exact integer coefficients of R_n^m as a polynomial in t = r^2 (lowest
    power first), after factoring out r^|m|.
    """
    m = abs(m)
    half = (n - m) // 2
    coeffs = [0] * (half + 1)
    for k in range(half + 1):
        c = math.factorial(n - k) // (
            math.factorial(k)
            * math.factorial((n + m) // 2 - k)
            * math.factorial((n - m) // 2 - k)
        )
        coeffs[half - k] = (-1) ** k * c
    return tuple(coeffs)


def zernike_radial(n: int, m: int, r):
    check_zernike_index(n, m)
    r = np.asarray(r, dtype=float)
    poly = compensated_horner(zernike_coefficients(n, m), r * r)
    return np.power(r, abs(m)) * poly


def eval_zernike_W(u: int, v: int, r, phi):
    if u < 0 or v < 0:
        raise IndexConstraintError(f"u, v >= 0 violated (u={u}, v={v})")
    norm = math.sqrt((u + v + 1) / math.pi)
    phase = np.exp(1j * (u - v) * np.asarray(phi, dtype=float))
    return norm * zernike_radial(u + v, abs(u - v), r) * phase


def eval_zernike(index, r, phi=None, variant: str = "R"):
    if variant == "R":
        return zernike_radial(index[0], index[1], r)
    elif variant == "W":
        if phi is None:
            raise ValueError("variant W needs phi")
        return eval_zernike_W(index[0], index[1], r, phi)
    else:
        raise NotImplementedError(f"Zernike variant {variant} not implemented")


class ZernikeRBasis(Basis):
    tag = "ZernikeR"
    names = ("n", "m")
    degree_name = "n"
    domain = ("r",)
    measure = "r dr"

    def check(self, comp):
        check_zernike_index(*comp)

    def degree(self, comp):
        return Fraction(comp[0])

    def candidates(self, max_degree):
        for n in range(int(max_degree) + 1):
            for m in range(-n, n + 1, 2):
                yield (n, m)

    def scale(self, comp):
        return math.sqrt(2 * (comp[0] + 1))

    def evaluate(self, comp, r, weighted=True):
        return zernike_radial(comp[0], comp[1], r)


class ZernikeWBasis(Basis):
    tag = "ZernikeW"
    names = ("u", "v")
    degree_name = "u+v"
    domain = ("r", "phi")
    measure = "r dr dphi"

    def check(self, comp):
        if comp[0] < 0 or comp[1] < 0:
            raise IndexConstraintError(f"u, v >= 0 violated (u={comp[0]}, v={comp[1]})")

    def degree(self, comp):
        return Fraction(comp[0] + comp[1])

    def candidates(self, max_degree):
        top = int(max_degree)
        for u in range(top + 1):
            for v in range(top + 1 - u):
                yield (u, v)

    def evaluate(self, comp, r, phi, weighted=True):
        return eval_zernike_W(comp[0], comp[1], r, phi)

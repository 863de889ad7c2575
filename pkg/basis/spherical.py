import math
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from basis.base import Basis
from basis.indices import IndexConstraintError


def check_sph_index(l: int, m: int):
    if l < 0:
        raise IndexConstraintError(f"l >= 0 violated (l={l})")
    if abs(m) > l:
        raise IndexConstraintError(f"|m| <= l violated (l={l}, m={m})")


def assoc_legendre(l: int, m: int, x):
    """
    Associated Legendre P_l^m(x) with the Condon-Shortley phase, by upward
    recurrence in l from P_|m|^|m|. Negative m uses
    P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
    """
    check_sph_index(l, m)
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1):
        raise ValueError("|x| <= 1 violated")
    mu = abs(m)
    s = np.sqrt(np.clip(1.0 - x * x, 0.0, None))
    pmm = np.ones_like(x)
    for k in range(1, mu + 1):
        pmm = -(2 * k - 1) * s * pmm
    if l == mu:
        value = pmm
    else:
        previous, current = pmm, x * (2 * mu + 1) * pmm
        for ell in range(mu + 2, l + 1):
            following = (
                (2 * ell - 1) * x * current - (ell + mu - 1) * previous
            ) / (ell - mu)
            previous, current = current, following
        value = current
    if m < 0:
        factor = math.exp(gammaln(l - mu + 1) - gammaln(l + mu + 1))
        value = (-1) ** mu * factor * value
    return value


def eval_sph_harm(l: int, m: int, theta, phi):
    """
    Y_l^m(theta, phi) = sqrt((l-m)!/(2 pi (l+m)!)) exp(i m phi) P_l^m(cos theta).
    """
    check_sph_index(l, m)
    theta = np.asarray(theta, dtype=float)
    norm = math.exp(0.5 * (gammaln(l - m + 1) - gammaln(l + m + 1))) / math.sqrt(
        2 * math.pi
    )
    cos_theta = np.clip(np.cos(theta), -1.0, 1.0)
    return norm * np.exp(1j * m * np.asarray(phi, dtype=float)) * assoc_legendre(
        l, m, cos_theta
    )


class SphericalYBasis(Basis):
    tag = "SphericalY"
    names = ("l", "m")
    degree_name = "l"
    domain = ("theta", "phi")
    measure = "dcos(theta) dphi"

    def check(self, comp):
        check_sph_index(*comp)

    def degree(self, comp):
        return Fraction(comp[0])

    def candidates(self, max_degree):
        for l in range(int(max_degree) + 1):
            for m in range(-l, l + 1):
                yield (l, m)

    def scale(self, comp):
        return math.sqrt(comp[0] + 0.5)

    def evaluate(self, comp, theta, phi, weighted=True):
        return eval_sph_harm(comp[0], comp[1], theta, phi)

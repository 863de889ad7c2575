"""
Continuity constants of the point-evaluation functionals, K = sqrt(sum of
inverse squared weights), by shell-wise partial summation with a power-law
tail estimate.
"""
import math
from typing import Callable, Optional

import numpy as np
from scipy.special import gammaln

from basis.indices import FamilyId

START_CUTOFF = 64
MAX_CUTOFF = 2**22


class DivergentSeriesError(ValueError):
    pass


def _fourier_shells(p: int) -> Callable:
    def shells(degrees):
        d = degrees.astype(float)
        return np.where(d == 0, 1.0, 2.0) * (d * d + 1.0) ** (-p)

    return shells


def _assoc_shells(parity: str) -> Callable:
    """
    Shell j of sum_m 1 / ((|m|!)^2 ((j-|m|)!)^5) for integer or half-integer j.
    """
    offset = 0.0 if parity == "integer" else 0.5

    def shells(degrees):
        out = np.zeros(len(degrees))
        for pos, d in enumerate(degrees):
            j = d + offset
            mu = np.arange(-j, j + 1.0)
            a = np.abs(mu)
            out[pos] = np.exp(-2 * gammaln(a + 1) - 5 * gammaln(j - a + 1)).sum()
        return out

    return shells


def _sphere_shells(p: int) -> Callable:
    """
    Shell l of sum_m (l+1/2) / (2 pi (l+|m|+1)^(2p)), from prefix sums of
    k^(-2p): the m-sum is (l+1)^(-2p) + 2 (H(2l+1) - H(l+1)).
    """

    def shells(degrees):
        top = int(degrees.max()) if len(degrees) else 0
        k = np.arange(1, 2 * top + 3, dtype=float)
        prefix = np.concatenate([[0.0], np.cumsum(k ** (-2.0 * p))])
        l = degrees.astype(int)
        inner = (l + 1.0) ** (-2.0 * p) + 2 * (prefix[2 * l + 1] - prefix[l + 1])
        return (l + 0.5) / (2 * math.pi) * inner

    return shells


def _zernike_shells(p: int) -> Callable:
    """
    Shell d = u+v: (d+1) indices, each bounded by (d+1)/pi over (d+1)^(2p).
    """

    def shells(degrees):
        n = degrees.astype(float) + 1.0
        return n * n ** (1.0 - 2.0 * p) / math.pi

    return shells


def _shells(family: FamilyId, p: int, parity: Optional[str]) -> Callable:
    tag = family.tag
    if tag == "FourierCircle":
        return _fourier_shells(p)
    elif tag in ("AssocLaguerre", "PlaneZ"):
        return _assoc_shells(parity or "integer")
    elif tag == "SphericalY":
        return _sphere_shells(p)
    elif tag == "ZernikeW":
        return _zernike_shells(p)
    raise NotImplementedError(f"Continuity constant of {family} not implemented")


def _check_convergent(family: FamilyId, p: int):
    """
    Shell decay exponents: Fourier 2p, sphere and Zernike 2p-2; the
    factorial series always converges. Exponent <= 1 diverges.
    """
    tag = family.tag
    exponent = {
        "FourierCircle": 2 * p,
        "SphericalY": 2 * p - 2,
        "ZernikeW": 2 * p - 2,
    }.get(tag, math.inf)
    if exponent <= 1:
        raise DivergentSeriesError(
            f"continuity constant of {family} at p={p} diverges "
            f"(shells decay like d^-{exponent})"
        )


def partial_constant(
    family: FamilyId, p: int, cutoff: int, parity: Optional[str] = None
) -> float:
    """
    sqrt of the partial sum over shells of degree <= cutoff.
    """
    shells = _shells(family, p, parity)
    return math.sqrt(math.fsum(shells(np.arange(cutoff + 1))))


def _estimate(shells, cutoff: int) -> float:
    values = shells(np.arange(cutoff + 1))
    partial = math.fsum(values)
    last, half = values[cutoff], values[cutoff // 2]
    if last <= 0 or half <= 0:
        return partial
    k = math.log(half / last) / math.log(cutoff / (cutoff // 2))
    if k <= 1:
        raise DivergentSeriesError(f"shell decay exponent {k:.3f} <= 1")
    # sum_{d > cutoff} c d^-k ~ c (cutoff + 1/2)^(1-k) / (k-1), c = last cutoff^k,
    # taken in logs: factorial shells fit k in the hundreds
    log_tail = math.log(last) + k * math.log(cutoff) + (1 - k) * math.log(cutoff + 0.5)
    return partial + math.exp(log_tail) / (k - 1)


def continuity_constant(
    family: FamilyId,
    p: int,
    tol: float = 1e-10,
    parity: Optional[str] = None,
) -> float:
    """
    Doubles the cutoff until the tail-corrected sum changes by less than tol.
    """
    _check_convergent(family, p)
    shells = _shells(family, p, parity)
    cutoff = START_CUTOFF
    previous = _estimate(shells, cutoff)
    while cutoff < MAX_CUTOFF:
        cutoff *= 2
        current = _estimate(shells, cutoff)
        if abs(math.sqrt(current) - math.sqrt(previous)) < tol:
            return math.sqrt(current)
        previous = current
    raise DivergentSeriesError(
        f"continuity constant of {family} at p={p} did not settle below {tol} "
        f"by cutoff {cutoff}"
    )


def fourier_closed_form(p: int) -> float:
    """
    Closed forms of sqrt(sum_m (m^2+1)^-p) for p = 1, 2.
    """
    if p == 1:
        return math.sqrt(math.pi / math.tanh(math.pi))
    elif p == 2:
        return math.sqrt(
            0.5 * math.pi * (1 / math.tanh(math.pi) + math.pi / math.sinh(math.pi) ** 2)
        )
    raise NotImplementedError(f"Closed form for p={p} not implemented")


def zernike_closed_form(p: int) -> float:
    if p == 2:
        return math.sqrt(math.pi / 6)
    raise NotImplementedError(f"Closed form for p={p} not implemented")

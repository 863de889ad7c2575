"""
Weighted coefficient seminorms of the test spaces.

A spec gives, for each index, the log of the base weight. The L2 flavour is
sqrt(sum |a|^2 w^(2p)) and the L1 flavour sum |a| w^p. Everything is summed
in log space so that factorial weights overflow loudly instead of silently.
"""
import math
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import torch
from scipy.special import gammaln

from algebra.coeffs import CoeffVec

LOG_MAX = math.log(np.finfo(np.float64).max)

Order = Union[int, Tuple[int, int]]


class SeminormOverflowError(OverflowError):
    pass


@dataclass(frozen=True)
class SeminormSpec:
    name: str
    families: Tuple[str, ...]
    flavor: str
    # log of the base weight(s) at an index; two entries for (r, s) specs
    log_base: Callable
    n_params: int = 1
    min_alpha: Optional[float] = None
    note: str = ""

    def log_weight(self, comp, p: Order, alpha: Optional[float] = None) -> float:
        bases = self.log_base(comp, alpha)
        if self.n_params == 1:
            return float(p) * bases
        r, s = p
        return r * bases[0] + s * bases[1]

    def weight(self, comp, p: Order, alpha: Optional[float] = None) -> float:
        log_w = self.log_weight(comp, p, alpha)
        if log_w > LOG_MAX:
            raise SeminormOverflowError(
                f"{self.name} weight at p={p} exceeds double range for index {comp}"
            )
        return math.exp(log_w)

    def shift(self, p: Order, by: Order) -> Order:
        if self.n_params == 1:
            return p + by
        return (p[0] + by[0], p[1] + by[1])


def _abs_half(c: int) -> float:
    return abs(c) / 2


SEMINORMS: Dict[str, SeminormSpec] = {
    spec.name: spec
    for spec in (
        SeminormSpec(
            "fourier_eq10",
            ("FourierCircle",),
            "L2",
            lambda c, a: 0.5 * math.log(c[0] ** 2 + 1),
        ),
        SeminormSpec(
            "su2_eq60",
            ("AssocLaguerre", "PlaneZ"),
            "L2",
            lambda c, a: 3 * _abs_half(c[1]) * math.log(2)
            + float(gammaln(c[0] / 2 + _abs_half(c[1]) + 2)),
        ),
        SeminormSpec(
            "su2_eq80",
            ("AssocLaguerre", "PlaneZ"),
            "L2",
            lambda c, a: math.log(c[0] / 2 + _abs_half(c[1]) + 1),
        ),
        SeminormSpec(
            "so32_eq114",
            ("SphericalY",),
            "L2",
            lambda c, a: math.log(c[0] + abs(c[1]) + 1),
        ),
        SeminormSpec(
            "su11_eq138",
            ("LaguerreM",),
            "L2",
            lambda c, a: math.log((c[0] + 1) * (c[0] + a + 2)),
        ),
        SeminormSpec(
            "su11_eq149",
            ("LaguerreM",),
            "L2",
            lambda c, a: math.log((c[0] + 1) * (c[0] + a + 1)),
            min_alpha=0.0,
            note="weight drops below 1 at n=0 for alpha < 0",
        ),
        SeminormSpec(
            "su22_eq175",
            ("JacobiJ", "HypersphereN"),
            "L2",
            lambda c, a: (
                math.log(c[0] / 2 + _abs_half(c[1]) + 1),
                math.log(c[0] / 2 + _abs_half(c[2]) + 1),
            ),
            n_params=2,
        ),
        SeminormSpec(
            "su22_eq178",
            ("JacobiJ", "HypersphereN"),
            "L1",
            lambda c, a: (
                math.log(c[0] / 2 + _abs_half(c[1]) + 1),
                math.log(c[0] / 2 + _abs_half(c[2]) + 1),
            ),
            n_params=2,
        ),
        SeminormSpec(
            "zernike_eq217",
            ("ZernikeW",),
            "L2",
            lambda c, a: math.log(c[0] + c[1] + 1),
        ),
        SeminormSpec(
            "zernike_eq219",
            ("ZernikeW",),
            "L1",
            lambda c, a: math.log(c[0] + c[1] + 1),
        ),
    )
}


def get_seminorm(name: str) -> SeminormSpec:
    if name not in SEMINORMS:
        raise ValueError(f"unknown seminorm {name}, expected one of {sorted(SEMINORMS)}")
    return SEMINORMS[name]


def _check_family(v: CoeffVec, spec: SeminormSpec):
    if v.family.tag not in spec.families:
        raise ValueError(f"{spec.name} is not defined on {v.family}")
    if spec.min_alpha is not None and v.family.alpha < spec.min_alpha:
        raise ValueError(
            f"{spec.name} needs alpha >= {spec.min_alpha}, got {v.family.alpha}"
        )


def log_weights(v: CoeffVec, spec: SeminormSpec, p: Order) -> torch.Tensor:
    values = [spec.log_weight(comp, p, v.family.alpha) for comp in v.window.indices]
    log_w = torch.tensor(values, dtype=v.float, device=v.device)
    if len(values) and float(log_w.max()) > LOG_MAX:
        worst = v.window.indices[int(torch.argmax(log_w))]
        raise SeminormOverflowError(
            f"{spec.name} weight at p={p} exceeds double range for "
            f"{v.family.basis.label(worst)}"
        )
    return log_w


def weighted_norm(amplitudes: torch.Tensor, log_w: torch.Tensor, flavor: str) -> float:
    """
    Seminorm of raw amplitudes against precomputed log weights.
    """
    magnitude = amplitudes.abs()
    nonzero = magnitude > 0
    if not torch.any(nonzero):
        return 0.0
    log_a = torch.log(magnitude[nonzero])
    log_w = log_w[nonzero]
    if flavor == "L2":
        log_value = 0.5 * float(torch.logsumexp(2 * log_a + 2 * log_w, dim=0))
    elif flavor == "L1":
        log_value = float(torch.logsumexp(log_a + log_w, dim=0))
    else:
        raise NotImplementedError(f"Seminorm flavour {flavor} not implemented")
    if log_value > LOG_MAX:
        raise SeminormOverflowError(f"seminorm value exceeds double range (log {log_value:.1f})")
    return math.exp(log_value)


def seminorm(v: CoeffVec, spec: Union[str, SeminormSpec], p: Order) -> float:
    if isinstance(spec, str):
        spec = get_seminorm(spec)
    _check_family(v, spec)
    return weighted_norm(v.amplitudes, log_weights(v, spec, p), spec.flavor)


def decay_rate(v: CoeffVec) -> Optional[float]:
    """
    Fitted exponential decay of |a| against degree: -slope of log|a|.
    """
    entries = v.entries()
    if len(entries) < 2:
        return None
    basis = v.family.basis
    degrees = np.array([float(basis.degree(comp)) for comp in entries])
    if np.ptp(degrees) == 0:
        return None
    log_a = np.log(np.abs(np.array(list(entries.values()))))
    slope = np.polyfit(degrees, log_a, 1)[0]
    return float(-slope)


def membership_report(
    v: CoeffVec, spec: Union[str, SeminormSpec], p_max: int
) -> Dict:
    """
    Finiteness of the seminorms up to p_max on the truncated data, with the
    fitted decay rate. Membership in the infinite-dimensional space is not
    decided here.
    """
    if isinstance(spec, str):
        spec = get_seminorm(spec)
    orders: Sequence[Order] = (
        list(range(p_max + 1))
        if spec.n_params == 1
        else [(p, p) for p in range(p_max + 1)]
    )
    values, finite = {}, {}
    for p in orders:
        key = str(p)
        try:
            value = seminorm(v, spec, p)
            values[key] = value
            finite[key] = math.isfinite(value)
        except SeminormOverflowError as e:
            values[key] = None
            finite[key] = False
            values[key + "_reason"] = str(e)
    return {
        "spec": spec.name,
        "seminorms": values,
        "finite": finite,
        "all_finite": all(finite.values()),
        "decay_rate": decay_rate(v),
    }

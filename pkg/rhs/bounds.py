"""
Pointwise kernel bounds and the boundedness of point-evaluation functionals
on synthesized truncations.
"""
import math
from typing import Callable, Dict, NamedTuple, Tuple

import numpy as np

from basis.indices import FamilyId, Window, parse_window
from basis.laguerre import lemma_bound
from rhs.constants import continuity_constant
from rhs.continuity import run_trials
from rhs.seminorms import seminorm
from transforms.plan import sample_points
from transforms.spectral import synthesize

SLACK = 1e-12

BOUND_BOXES = {
    "AssocLaguerre": ((0.0, 64.0),),
    "PlaneZ": ((0.0, 8.0), (0.0, 2 * math.pi)),
}


def _normalized(family: FamilyId, comp, points) -> np.ndarray:
    """
    |kernel| divided by its printed bound; the sphere compares |Y|^2 2 pi.
    """
    basis = family.basis
    value = np.abs(basis.evaluate(comp, *points))
    tag = family.tag
    if tag in ("AssocLaguerre", "PlaneZ"):
        return value / lemma_bound(*comp)
    elif tag == "ZernikeW":
        return value / math.sqrt((comp[0] + comp[1] + 1) / math.pi)
    elif tag == "SphericalY":
        return value**2 * 2 * math.pi
    elif tag == "ZernikeR":
        return value
    raise NotImplementedError(f"Kernel bound for {family} not implemented")


def kernel_bound_check(
    family: FamilyId, window: Window, samples: int = 10000, seed: int = 0
) -> Tuple[float, Dict]:
    """
    max over window indices and uniform samples of |basis| / bound.
    """
    rng = np.random.default_rng(seed)
    points = sample_points(family, rng, samples, BOUND_BOXES.get(family.tag))
    worst, worst_comp = 0.0, None
    for comp in window.indices:
        ratio = float(np.max(_normalized(family, comp, points)))
        if ratio > worst:
            worst, worst_comp = ratio, comp
    details = {"samples": samples, "seed": seed, "window": window.to_text()}
    if worst_comp is not None:
        details["worst_index"] = family.basis.label(worst_comp)
    return worst, details


class PointBound(NamedTuple):
    family: str
    window: str
    spec: str
    p: int
    constant: Callable[[], float]


POINT_BOUNDS = {
    "Eq13-fourier-point-evaluation": PointBound(
        "FourierCircle",
        "|m|<=16",
        "fourier_eq10",
        1,
        lambda: continuity_constant(FamilyId("FourierCircle"), 1),
    ),
    "Eq73-plane-point-evaluation[integer]": PointBound(
        "PlaneZ",
        "j<=4,parity=integer",
        "su2_eq60",
        2,
        lambda: continuity_constant(FamilyId("PlaneZ"), 2, parity="integer"),
    ),
    "Eq73-plane-point-evaluation[half]": PointBound(
        "PlaneZ",
        "j<=7/2,parity=half",
        "su2_eq60",
        2,
        lambda: continuity_constant(FamilyId("PlaneZ"), 2, parity="half"),
    ),
    "Eq121-sphere-point-evaluation": PointBound(
        "SphericalY",
        "l<=12",
        "so32_eq114",
        3,
        lambda: continuity_constant(FamilyId("SphericalY"), 3),
    ),
    "Eq239-disk-point-evaluation": PointBound(
        "ZernikeW",
        "u+v<=12",
        "zernike_eq219",
        1,
        lambda: 1 / math.sqrt(math.pi),
    ),
}


def point_evaluation_check(
    case: str,
    trials: int = 100,
    seed: int = 0,
    probes: int = 256,
    rho_range: Tuple[float, float] = (0.1, 0.7),
) -> Dict:
    """
    |f(x)| <= C ||f||_p over probe points for random truncated f.
    """
    if case not in POINT_BOUNDS:
        raise ValueError(f"unknown point bound {case}, expected one of {sorted(POINT_BOUNDS)}")
    bound = POINT_BOUNDS[case]
    family = FamilyId(bound.family)
    window = parse_window(family, bound.window)
    constant = bound.constant()
    points = sample_points(
        family, np.random.default_rng(seed), probes, BOUND_BOXES.get(family.tag)
    )

    def evaluate(v):
        lhs = float(np.max(np.abs(synthesize(v, points))))
        yield lhs, constant * seminorm(v, bound.spec, bound.p)

    report = run_trials(window, trials, seed, rho_range, evaluate)
    report["constant"] = constant
    report["spec"] = bound.spec
    return report

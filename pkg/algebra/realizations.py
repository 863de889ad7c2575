"""
Differential and multiplicative forms of the generators, compared pointwise
with the shift-rule image synthesized from the kernels.
"""
import math
from typing import Callable, NamedTuple, Optional, Tuple, Union

import numpy as np

from algebra.coeffs import CoeffVec
from algebra.generators import GeneratorSpec, OperatorExpr
from basis.fourier import eval_fourier
from basis.hermite import eval_hermite
from basis.indices import MultiIndex, Window
from basis.laguerre import eval_assoc_laguerre, eval_laguerre_M
from basis.zernike import eval_zernike_W
from utils.common import richardson_derivative

STEP = 1e-3


class UnknownRealizationError(KeyError):
    pass


class Realization(NamedTuple):
    # kernel(family, comp, *coords) evaluates the function the operator acts on
    kernel: Callable
    # action(f, family, comp, *coords) applies the operator to f
    action: Callable
    # sample(rng, count) draws interior points, one array per coordinate
    sample: Callable


def _d(f, x):
    return richardson_derivative(f, x, order=1, h=STEP)[0]


def _fourier_kernel(family, comp, phi):
    return eval_fourier(comp[0], phi)


def _hermite_kernel(family, comp, x):
    return eval_hermite(comp[0], x)


def _laguerre_kernel(family, comp, y):
    return eval_laguerre_M(comp[0], family.alpha, y)


def _assoc_kernel(family, comp, x):
    return eval_assoc_laguerre(comp[0], comp[1], x)


def _zernike_kernel(family, comp, r, phi):
    return eval_zernike_W(comp[0], comp[1], r, phi)


def _uniform(low, high):
    def sample(rng, count):
        return (rng.uniform(low, high, count),)

    return sample


def _disk(rng, count):
    return rng.uniform(0.05, 0.95, count), rng.uniform(0.0, 2 * math.pi, count)


def _su11_ladder(sign):
    """
    K+- = +-y d/dy + N + (1 +- 1)/2 + (alpha - y)/2 on M_n^alpha.
    """

    def action(f, family, comp, y):
        n, alpha = comp[0], family.alpha
        return (
            sign * y * _d(f, y)
            + (n + 0.5 * (1 + sign) + 0.5 * (alpha - y)) * f(y)
        )

    return action


def _su2_ladder(sign):
    """
    K+- = -+2(M +- 1/2) d/dx + (2/x) M (M +- 1/2) - (J + 1/2) on L_j^m(x).
    """

    def action(f, family, comp, x):
        j, m = comp[0] / 2, comp[1] / 2
        shifted = m + 0.5 * sign
        return (
            -sign * 2 * shifted * _d(f, x)
            + (2.0 / x) * m * shifted * f(x)
            - (j + 0.5) * f(x)
        )

    return action


REALIZATIONS = {
    ("FourierCircle", "J"): Realization(
        _fourier_kernel,
        lambda f, family, comp, phi: 1j * _d(f, phi),
        _uniform(0.0, 2 * math.pi),
    ),
    ("Hermite", "a"): Realization(
        _hermite_kernel,
        lambda f, family, comp, x: (x * f(x) + _d(f, x)) / math.sqrt(2),
        _uniform(-4.0, 4.0),
    ),
    ("Hermite", "a+"): Realization(
        _hermite_kernel,
        lambda f, family, comp, x: (x * f(x) - _d(f, x)) / math.sqrt(2),
        _uniform(-4.0, 4.0),
    ),
    ("Hermite", "N"): Realization(
        _hermite_kernel,
        lambda f, family, comp, x: 0.5
        * (x * x * f(x) - richardson_derivative(f, x, order=2, h=STEP)[0] - f(x)),
        _uniform(-4.0, 4.0),
    ),
    ("Hermite", "Q"): Realization(
        _hermite_kernel,
        lambda f, family, comp, x: x * f(x),
        _uniform(-4.0, 4.0),
    ),
    ("Hermite", "P"): Realization(
        _hermite_kernel,
        lambda f, family, comp, x: 1j * _d(f, x),
        _uniform(-4.0, 4.0),
    ),
    ("LaguerreM", "K+"): Realization(_laguerre_kernel, _su11_ladder(1), _uniform(0.1, 12.0)),
    ("LaguerreM", "K-"): Realization(_laguerre_kernel, _su11_ladder(-1), _uniform(0.1, 12.0)),
    ("LaguerreM", "Y"): Realization(
        _laguerre_kernel,
        lambda f, family, comp, y: y * f(y),
        _uniform(0.0, 12.0),
    ),
    ("PlaneZ", "K+"): Realization(_assoc_kernel, _su2_ladder(1), _uniform(0.1, 12.0)),
    ("PlaneZ", "K-"): Realization(_assoc_kernel, _su2_ladder(-1), _uniform(0.1, 12.0)),
    ("PlaneZ", "K3"): Realization(
        _assoc_kernel,
        lambda f, family, comp, x: comp[1] / 2 * f(x),
        _uniform(0.0, 12.0),
    ),
    ("ZernikeW", "P"): Realization(
        _zernike_kernel,
        lambda f, family, comp, r, phi: r * np.exp(1j * phi) * f(r, phi),
        _disk,
    ),
}


def get_realization(family_tag: str, name: str) -> Realization:
    try:
        return REALIZATIONS[(family_tag, name)]
    except KeyError:
        raise UnknownRealizationError(
            f"no differential realization registered for {name} on {family_tag}"
        ) from None


def differential_consistency(
    g: Union[GeneratorSpec, OperatorExpr],
    index: MultiIndex,
    points: Optional[Tuple[np.ndarray, ...]] = None,
    name: Optional[str] = None,
    count: int = 100,
    seed: int = 0,
) -> float:
    """
    Max pointwise difference between the realization applied to the basis
    function of index and the synthesized shift-rule image, relative to
    max(1, max |image|).
    """
    name = name or getattr(g, "name", None)
    if name is None:
        raise UnknownRealizationError("an operator expression needs an explicit name")
    family = index.family
    realization = get_realization(family.tag, name)
    if points is None:
        points = realization.sample(np.random.default_rng(seed), count)
    points = tuple(np.asarray(p, dtype=float) for p in points)
    comp = index.components

    def f(*coords):
        return realization.kernel(family, comp, *coords)

    lhs = np.asarray(realization.action(f, family, comp, *points))

    expr = OperatorExpr.of(g)
    window = Window(family, index.degree)
    image = expr.apply(CoeffVec.basis_vector(window, comp), grow_window=True)
    rhs = np.zeros(points[0].shape, dtype=complex)
    for target, amplitude in image.entries().items():
        rhs = rhs + amplitude * realization.kernel(family, target, *points)
    scale = max(1.0, float(np.max(np.abs(rhs))) if rhs.size else 1.0)
    return float(np.max(np.abs(lhs - rhs)) / scale)

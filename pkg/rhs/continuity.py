"""
Seeded random-trial checks of the seminorm inequalities: operator
continuity, monotonicity in p and L2/L1 domination.
"""
import math
from typing import Callable, Dict, Iterable, List, Tuple, Union

import numpy as np
import torch

from algebra.coeffs import CoeffVec
from algebra.generators import GeneratorSpec, OperatorExpr
from basis.indices import Window
from rhs.seminorms import (
    SeminormOverflowError,
    SeminormSpec,
    get_seminorm,
    log_weights,
    seminorm,
    weighted_norm,
)

SLACK = 1e-12


def trial_seeds(seed: int, trials: int) -> List[int]:
    """
    Independent per-trial seeds split off one root seed.
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(child.generate_state(1)[0]) for child in children]


def random_coeffvec(
    window: Window,
    seed: int,
    rho_range: Tuple[float, float] = (0.1, 0.7),
    device="cpu",
    float_precision=64,
) -> CoeffVec:
    """
    Random vector with |a| = rho^degree, rho uniform in rho_range, and
    uniform random phases.
    """
    generator = torch.Generator().manual_seed(seed)
    low, high = rho_range
    rho = low + (high - low) * torch.rand(1, generator=generator, dtype=torch.float64)
    phases = 2 * math.pi * torch.rand(len(window), generator=generator, dtype=torch.float64)
    degrees = torch.tensor([float(d) for d in window.degrees()], dtype=torch.float64)
    amplitudes = rho**degrees * torch.exp(1j * phases)
    return CoeffVec(window, amplitudes, device=device, float_precision=float_precision)


def source_weighted(g: GeneratorSpec, v: CoeffVec, spec: SeminormSpec, p) -> float:
    """
    Seminorm of the image with every amplitude weighted at its source index.
    """
    if not isinstance(g, GeneratorSpec) or len(g.terms) != 1:
        raise ValueError(f"source weighting needs a single-term generator, got {g}")
    factors = torch.tensor(
        [float(g.terms[0].amplitude(comp)) for comp in v.window.indices],
        dtype=v.float,
        device=v.device,
    )
    return weighted_norm(factors * v.amplitudes, log_weights(v, spec, p), spec.flavor)


def run_trials(
    window: Window,
    trials: int,
    seed: int,
    rho_range,
    evaluate: Callable[[CoeffVec], Iterable[Tuple[float, float]]],
) -> Dict:
    seeds = trial_seeds(seed, trials)
    max_violation, max_ratio = 0.0, 0.0
    violations, invalid, reasons = 0, 0, []
    for trial_seed in seeds:
        v = random_coeffvec(window, trial_seed, rho_range)
        try:
            pairs = list(evaluate(v))
        except SeminormOverflowError as e:
            invalid += 1
            reasons.append(str(e))
            continue
        if not all(math.isfinite(lhs) and math.isfinite(bound) for lhs, bound in pairs):
            invalid += 1
            reasons.append(f"non-finite seminorm in trial {trial_seed}")
            continue
        violated = False
        for lhs, bound in pairs:
            if bound > 0:
                max_ratio = max(max_ratio, lhs / bound)
                excess = max(0.0, lhs - bound * (1 + SLACK)) / bound
            else:
                excess = max(0.0, lhs)
            if excess > 0:
                violated = True
            max_violation = max(max_violation, excess)
        violations += violated
    return {
        "max_violation": max_violation,
        "max_ratio": max_ratio,
        "violations": violations,
        "trials": trials,
        "invalid": invalid,
        "reasons": reasons[:3],
        "seed": seed,
        "seeds": seeds,
    }


def continuity_inequality_check(
    g: Union[GeneratorSpec, OperatorExpr],
    spec: Union[str, SeminormSpec],
    window: Window,
    trials: int = 100,
    p_range: Iterable = range(5),
    constant: Union[float, Callable] = 1.0,
    by=1,
    shape: str = "target",
    seed: int = 0,
    rho_range: Tuple[float, float] = (0.1, 0.7),
) -> Dict:
    """
    Checks ||g v||_p <= C(p) ||v||_{p+by} on random vectors. shape="source"
    weights the image at the source index instead of the target.
    """
    if isinstance(spec, str):
        spec = get_seminorm(spec)
    if shape not in ("target", "source"):
        raise ValueError(f"shape must be 'target' or 'source', got {shape}")
    expr = OperatorExpr.of(g)
    p_range = list(p_range)

    def evaluate(v):
        image = expr.apply(v, grow_window=True) if shape == "target" else None
        for p in p_range:
            c = constant(p) if callable(constant) else constant
            if shape == "target":
                lhs = seminorm(image, spec, p)
            else:
                lhs = source_weighted(g, v, spec, p)
            yield lhs, c * seminorm(v, spec, spec.shift(p, by))

    report = run_trials(window, trials, seed, rho_range, evaluate)
    report["shape"] = shape
    report["spec"] = spec.name
    return report


def monotonicity_check(
    spec: Union[str, SeminormSpec],
    window: Window,
    trials: int = 100,
    p_range: Iterable = range(4),
    seed: int = 0,
    rho_range: Tuple[float, float] = (0.1, 0.7),
) -> Dict:
    """
    seminorm(v, p) <= seminorm(v, p+1).
    """
    if isinstance(spec, str):
        spec = get_seminorm(spec)
    step = 1 if spec.n_params == 1 else (1, 1)
    p_range = list(p_range)

    def evaluate(v):
        for p in p_range:
            yield seminorm(v, spec, p), seminorm(v, spec, spec.shift(p, step))

    report = run_trials(window, trials, seed, rho_range, evaluate)
    report["spec"] = spec.name
    return report


def domination_check(
    lower: Union[str, SeminormSpec],
    upper: Union[str, SeminormSpec],
    window: Window,
    trials: int = 100,
    p_range: Iterable = range(5),
    seed: int = 0,
    rho_range: Tuple[float, float] = (0.1, 0.7),
) -> Dict:
    """
    ||v||_lower,p <= ||v||_upper,p, e.g. the Zernike L2 norms under the L1 ones.
    """
    lower = get_seminorm(lower) if isinstance(lower, str) else lower
    upper = get_seminorm(upper) if isinstance(upper, str) else upper
    p_range = list(p_range)

    def evaluate(v):
        for p in p_range:
            yield seminorm(v, lower, p), seminorm(v, upper, p)

    return run_trials(window, trials, seed, rho_range, evaluate)

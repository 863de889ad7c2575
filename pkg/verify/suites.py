"""
The verification battery. Each suite expands into tasks; a task produces one
or more checks and never raises: its exception becomes a failing check that
carries the message as details.reason. Tasks run on a thread pool and are
merged back in submission order, so reports do not depend on --jobs.
"""
import math
import time
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from algebra.checks import (
    adjoint_pair_residual,
    cartan_weight_residual,
    casimir_residual,
    commutator_residual,
    composition_residual,
)
from algebra.coeffs import CoeffVec
from algebra.generators import OperatorExpr
from algebra.realizations import REALIZATIONS, differential_consistency
from algebra.tables import ALGEBRAS, Algebra, get_algebra
from basis.indices import FamilyId, MultiIndex, Window, parse_window
from basis.odes import ODES
from quadrature.rules import build_rule, moment_residual
from rhs.bounds import POINT_BOUNDS, kernel_bound_check, point_evaluation_check
from rhs.constants import (
    DivergentSeriesError,
    continuity_constant,
    fourier_closed_form,
    partial_constant,
    zernike_closed_form,
)
from rhs.continuity import (
    continuity_inequality_check,
    domination_check,
    monotonicity_check,
    random_coeffvec,
)
from rhs.seminorms import SEMINORMS
from transforms.crossfamily import (
    cross_family_residual,
    recurrence_residual,
    symmetry_residual,
)
from transforms.fourier import CONVERGED, hermite_ft_residual, rotate_circle, rotation_covariance_residual
from transforms.plan import build_plan
from transforms.spectral import (
    gram_residual,
    kernel_projection_residual,
    multiplication_residual,
    parseval_residual,
    round_trip_residual,
)
from verify.config import SuiteConfig
from verify.report import Check, VerificationReport


class Task(NamedTuple):
    name: str
    tier: str
    run: Callable[[], List[Check]]


def _single(name: str, tier: str, tolerance: float, compute: Callable, informational=False):
    """
    Task of one check from a function returning residual or (residual, details).
    """

    def run():
        result = compute()
        residual, details = result if isinstance(result, tuple) else (result, {})
        return [Check(name, residual, tolerance, details, informational=informational)]

    return Task(name, tier, run)


def _run_task(task: Task, config: SuiteConfig, timings: bool) -> List[Check]:
    start = time.perf_counter()
    try:
        checks = task.run()
    except Exception as e:
        checks = [
            Check.failure(task.name, config.tolerance(task.tier), f"{type(e).__name__}: {e}")
        ]
    if timings:
        elapsed = time.perf_counter() - start
        for check in checks:
            check.time = elapsed / len(checks)
    return checks


def _trial_check(name: str, report: Dict) -> Check:
    """
    Random-trial inequality: residual is the largest relative violation and
    the tolerance is zero, since the slack is already inside the violation.
    """
    details = {k: v for k, v in report.items() if k != "seeds"}
    if report["invalid"] == report["trials"]:
        return Check.failure(name, 0.0, "every trial was invalid", **details)
    return Check(name, report["max_violation"], 0.0, details)


# ---------------------------------------------------------------- selection


def _families(config: SuiteConfig, defaults: Iterable[str]) -> List[str]:
    if config.family is None:
        return list(defaults)
    tag = FamilyId.parse(config.family, config.alpha).tag
    return [tag] if tag in defaults else []


def _algebras(config: SuiteConfig) -> List[Algebra]:
    tags = [config.algebra] if config.algebra else list(ALGEBRAS)
    return [get_algebra(tag, config.alpha) for tag in tags]


def _windows(algebra: Algebra, config: SuiteConfig) -> List[Window]:
    texts = [config.window] if config.window else algebra.window_options()
    return [parse_window(algebra.family, text) for text in texts]


def _label(base: str, window: Window, windows: List[Window]) -> str:
    return base if len(windows) == 1 else f"{base}@{window.to_text()}"


def _family_window(config: SuiteConfig, family: FamilyId, default: str) -> Window:
    return parse_window(family, config.window or default)


def _plan(family: FamilyId, window: Window, config: SuiteConfig):
    return build_plan(family, window, config.quad_order)


# ---------------------------------------------------------------- orthonormality


def _same(*positions):
    return lambda a, b: all(a[p] == b[p] for p in positions)


def _same_parity(a, b):
    return a[0] % 2 == b[0] % 2


def _even_q_gap(a, b):
    return a[0] % 2 == b[0] % 2 and (a[2] - b[2]) % 4 == 0


def _odd_q_gap(a, b):
    return a[0] % 2 == b[0] % 2 and (a[2] - b[2]) % 4 != 0


def _gram_task(name, family_tag, window_text, config, pair_filter=None, alpha=None, informational=False):
    tolerance = config.tolerance("quadrature")

    def compute():
        family = FamilyId.parse(family_tag, alpha)
        window = _family_window(config, family, window_text)
        return gram_residual(_plan(family, window, config), window, pair_filter)

    return _single(name, "quadrature", tolerance, compute, informational)


def orthonormality_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    families = _families(config, (
        "FourierCircle", "Hermite", "LaguerreM", "AssocLaguerre", "PlaneZ",
        "SphericalY", "JacobiJ", "HypersphereN", "ZernikeR", "ZernikeW",
    ))
    for tag in families:
        if tag == "FourierCircle":
            tasks.append(_gram_task("Eq9aa-fourier-gram", tag, "|m|<=16", config))
        elif tag == "Hermite":
            tasks.append(_gram_task("Eq83-hermite-gram", tag, "n<=32", config))
        elif tag == "LaguerreM":
            alphas = [config.alpha] if config.alpha is not None else [-0.5, 0.0, 1.0, 2.5]
            for alpha in alphas:
                tasks.append(
                    _gram_task(f"Eq137-laguerre-gram[alpha={alpha:g}]", tag, "n<=32", config, alpha=alpha)
                )
        elif tag == "AssocLaguerre":
            tasks.append(_gram_task("Eq39-assoc-laguerre-gram", tag, "j<=8", config, _same(1)))
        elif tag == "PlaneZ":
            tasks.append(_gram_task("Eq51-plane-gram", tag, "j<=8", config, _same_parity))
        elif tag == "SphericalY":
            tasks.append(_gram_task("Eq110-sphere-gram", tag, "l<=16", config))
        elif tag == "JacobiJ":
            for m, q in (("0", "0"), ("1", "0"), ("1/2", "1/2"), ("1/2", "-1/2"), ("2", "1"), ("3/2", "1/2")):
                tasks.append(
                    _gram_task(f"Eq162-jacobi-gram[m={m},q={q}]", tag, f"j<=8,m={m},q={q}", config)
                )
        elif tag == "HypersphereN":
            for parity, bound in (("integer", "3"), ("half", "5/2")):
                text = f"j<={bound},parity={parity}"
                tasks.append(
                    _gram_task(f"Eq171-hypersphere-gram[{parity}]", tag, text, config, _even_q_gap)
                )
                tasks.append(
                    _gram_task(
                        f"Eq171-hypersphere-gram-odd-q[{parity}]",
                        tag,
                        text,
                        config,
                        _odd_q_gap,
                        informational=True,
                    )
                )
        elif tag == "ZernikeR":
            for m in range(4):
                tasks.append(
                    _gram_task(f"Eq202-zernike-radial-gram[m={m}]", tag, f"n<=16,m={m}", config)
                )
        elif tag == "ZernikeW":
            tasks.append(_gram_task("Eq211-zernike-gram", tag, "u+v<=16", config))

    if config.family is None:
        tolerance = config.tolerance("quadrature")
        for kind, order, alpha in (
            ("legendre", 64, None),
            ("hermite", 80, None),
            ("laguerre", 80, 0.0),
            ("laguerre", 80, 2.5),
        ):
            suffix = f"{kind}-{order}" + (f",alpha={alpha:g}" if alpha is not None else "")
            tasks.append(
                _single(
                    f"quadrature-moments[{suffix}]",
                    "quadrature",
                    tolerance,
                    lambda kind=kind, order=order, alpha=alpha: moment_residual(
                        build_rule(kind, order, alpha=alpha)
                    ),
                )
            )

        def doubling():
            family = FamilyId("ZernikeW")
            window = parse_window(family, "u+v<=16")
            base = build_plan(family, window)
            doubled = build_plan(family, window, 2 * max(base.orders))
            residual, details = gram_residual(doubled, window)
            details["base_residual"] = gram_residual(base, window)[0]
            return residual, details

        tasks.append(_single("Eq211-zernike-gram-order-doubling", "quadrature", tolerance, doubling))
    return tasks


# ---------------------------------------------------------------- algebra suites


def commutator_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    tolerance = config.tolerance("exact")
    for algebra in _algebras(config):
        windows = _windows(algebra, config)
        for window in windows:
            for relation in algebra.commutators():
                tasks.append(
                    _single(
                        _label(relation.label, window, windows),
                        "exact",
                        tolerance,
                        lambda r=relation, w=window: commutator_residual(
                            r.left, r.right, r.expected, w
                        ),
                    )
                )
            for label, expression in algebra.identities():
                tasks.append(
                    _single(
                        _label(label, window, windows),
                        "exact",
                        tolerance,
                        lambda e=expression, w=window: composition_residual(
                            e, OperatorExpr.zero(e.family), w
                        ),
                    )
                )
    return tasks


def _casimir_algebras(config: SuiteConfig) -> List[Algebra]:
    algebras = []
    for algebra in _algebras(config):
        if not algebra.casimirs():
            continue
        if algebra.tag == "su11_laguerre" and config.alpha is None:
            algebras += [get_algebra(algebra.tag, alpha) for alpha in (0.0, 1.0, 2.5)]
        else:
            algebras.append(algebra)
    return algebras


def casimir_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    tolerance = config.tolerance("exact")
    for algebra in _casimir_algebras(config):
        windows = _windows(algebra, config)
        for window in windows:
            for casimir in algebra.casimirs():
                label = casimir.label
                if algebra.alpha is not None:
                    label += f"[alpha={algebra.alpha:g}]"
                tasks.append(
                    _single(
                        _label(label, window, windows),
                        "exact",
                        tolerance,
                        lambda a=algebra, c=casimir, w=window: casimir_residual(a, w, c),
                    )
                )
    return tasks


MIN_PAIRS = 100


def adjoint_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    tolerance = config.tolerance("exact")
    for algebra in _algebras(config):
        window = parse_window(algebra.family, config.window or algebra.default_window)
        for plus, minus in algebra.adjoint_pairs():

            def compute(a=algebra, p=plus, m=minus, w=window):
                residual, details = adjoint_pair_residual(a[p], a[m], w)
                if details["pairs"] < MIN_PAIRS:
                    details["warning"] = f"only {details['pairs']} index pairs (< {MIN_PAIRS})"
                return residual, details

            tasks.append(_single(f"{algebra.tag}-adjoint[{plus},{minus}]", "exact", tolerance, compute))
    return tasks


def weight_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    tolerance = config.tolerance("exact")
    prefixes = {"so32_spherical": "Eq133-so32", "su22_jacobi": "Eq166-su22"}
    for algebra in _algebras(config):
        window = parse_window(algebra.family, config.window or algebra.default_window)
        prefix = prefixes.get(algebra.tag, algebra.tag)
        for ladder_name, cartan_name in algebra.weight_pairs():
            tasks.append(
                _single(
                    f"{prefix}-weight[{ladder_name},{cartan_name}]",
                    "exact",
                    tolerance,
                    lambda a=algebra, g=ladder_name, c=cartan_name, w=window: cartan_weight_residual(
                        a[g], a[c], w
                    ),
                )
            )
        if algebra.tag == "su22_jacobi":
            composed = parse_window(algebra.family, config.window or "j<=5")
            for sign in "+-":
                tasks.append(
                    _single(
                        f"Eq168-su22-composition[K{sign}]",
                        "exact",
                        tolerance,
                        lambda a=algebra, s=sign, w=composed: composition_residual(
                            a["FC" + s],
                            a["K" + s],
                            w,
                            columns=lambda c: abs(c[1]) > abs(c[2]),
                        ),
                    )
                )
    return tasks


# ---------------------------------------------------------------- differential

REALIZATION_ALGEBRAS = {
    "FourierCircle": "so2_fourier",
    "Hermite": "heisenberg_hermite",
    "LaguerreM": "su11_laguerre",
    "PlaneZ": "su2_assoc_laguerre",
    "ZernikeW": "su11xsu11_zernike",
}

ODE_CASES = {
    "Eq37-laguerre-ode": ((5, 1.5), (0.5, 10.0)),
    "Eq40-assoc-laguerre-ode": ((6, -2), (0.5, 10.0)),
    "Eq50-plane-radial-ode": ((6, 2), (0.3, 3.0)),
    "Eq156-jacobi-polynomial-ode": ((8, 2, 2), (-0.9, 0.9)),
    "Eq161-jacobi-ode": ((5, 1, 3), (-0.9, 0.9)),
    "Eq199-zernike-ode": ((6, 2), (0.2, 0.9)),
    "hermite-ode": ((6,), (-4.0, 4.0)),
    "legendre-ode": ((5, 2), (-0.9, 0.9)),
}


def differential_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    numeric = config.tolerance("numeric")
    alpha = 1.0 if config.alpha is None else config.alpha
    for family_tag, name in REALIZATIONS:

        def compute(family_tag=family_tag, name=name):
            algebra = get_algebra(REALIZATION_ALGEBRAS[family_tag], alpha)
            window = parse_window(algebra.family, "|m|<=3" if family_tag == "FourierCircle" else _small(family_tag))
            worst, details = 0.0, {}
            for comp in window.indices:
                index = MultiIndex(algebra.family, comp)
                residual = differential_consistency(algebra[name], index, name=name, seed=config.seed)
                if residual >= worst:
                    worst, details = residual, {"worst_index": str(index)}
            details["indices"] = len(window)
            return worst, details

        tasks.append(_single(f"differential[{family_tag}:{name}]", "numeric", numeric, compute))

    ode = config.tolerance("ode")
    for label, (args, (low, high)) in ODE_CASES.items():
        points = np.linspace(low, high, 41)
        tasks.append(_single(label, "ode", ode, lambda f=ODES[label], a=args, x=points: f(*a, x)))

    quadrature = config.tolerance("quadrature")

    def laguerre_y():
        algebra = get_algebra("su11_laguerre", alpha)
        window = parse_window(algebra.family, "n<=30")
        return multiplication_residual(algebra["Y"], lambda y: y, window)

    def zernike_p():
        algebra = get_algebra("su11xsu11_zernike")
        window = parse_window(algebra.family, "u+v<=12")
        return multiplication_residual(
            algebra["P"], lambda r, phi: r * np.exp(1j * phi), window
        )

    tasks.append(_single("Eq144-laguerre-multiplication", "quadrature", quadrature, laguerre_y))
    tasks.append(_single("Eq226-zernike-multiplication", "quadrature", quadrature, zernike_p))
    return tasks


def _small(family_tag: str) -> str:
    return {"Hermite": "n<=4", "LaguerreM": "n<=4", "PlaneZ": "j<=2", "ZernikeW": "u+v<=3"}[family_tag]


# ---------------------------------------------------------------- seminorms


def seminorm_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    common = dict(trials=config.trials, seed=config.seed, rho_range=config.rho_range)
    p_range = range(config.p_max + 1)
    two_params = [(r, s) for r in range(3) for s in range(3)]
    alpha = 1.0 if config.alpha is None else config.alpha

    def continuity(name, algebra_tag, generator, spec, window_text, **kwargs):
        def run():
            algebra = get_algebra(algebra_tag, alpha)
            window = parse_window(algebra.family, window_text)
            options = {"p_range": p_range, **common, **kwargs}
            report = continuity_inequality_check(algebra[generator], spec, window, **options)
            return [_trial_check(name, report)]

        return Task(name, "exact", run)

    def target_ratio(name, algebra_tag, generator, spec, window_text):
        def run():
            algebra = get_algebra(algebra_tag, alpha)
            window = parse_window(algebra.family, window_text)
            report = continuity_inequality_check(
                algebra[generator], spec, window, p_range=p_range, **common
            )
            details = {k: v for k, v in report.items() if k != "seeds"}
            return [Check(name, report["max_ratio"], math.inf, details, informational=True)]

        return Task(name, "exact", run)

    tasks += [
        continuity("Eq33-fourier-continuity[J]", "so2_fourier", "J", "fourier_eq10", "|m|<=16"),
        continuity("Eq79-su2-continuity[J,eq80]", "su2_assoc_laguerre", "J", "su2_eq80", "j<=6"),
        continuity("Eq79-su2-continuity[J,eq60]", "su2_assoc_laguerre", "J", "su2_eq60", "j<=6"),
        continuity("Eq136-so32-continuity[L]", "so32_spherical", "L", "so32_eq114", "l<=12"),
        continuity(
            "Eq148-su11-continuity[K+]", "su11_laguerre", "K+", "su11_eq138", "n<=30", shape="source"
        ),
        target_ratio("Eq148-su11-target-ratio[K+]", "su11_laguerre", "K+", "su11_eq138", "n<=30"),
        continuity("Eq148-su11-continuity[K-]", "su11_laguerre", "K-", "su11_eq138", "n<=30"),
        continuity("Eq148-su11-continuity[K3]", "su11_laguerre", "K3", "su11_eq138", "n<=30"),
        continuity(
            "Eq183-su22-continuity[J]",
            "su22_jacobi",
            "J",
            "su22_eq175",
            "j<=4",
            p_range=two_params,
            by=(1, 0),
        ),
        continuity(
            "Eq231-zernike-continuity[P]",
            "su11xsu11_zernike",
            "P",
            "zernike_eq219",
            "u+v<=12",
            constant=lambda p: 2**p + 1,
            by=0,
        ),
        continuity(
            "Eq237-zernike-continuity[A+]",
            "su11xsu11_zernike",
            "A+",
            "zernike_eq219",
            "u+v<=12",
            shape="source",
        ),
        target_ratio("Eq237-zernike-target-ratio[A+]", "su11xsu11_zernike", "A+", "zernike_eq219", "u+v<=12"),
    ]

    def domination():
        window = parse_window(FamilyId("ZernikeW"), "u+v<=12")
        report = domination_check("zernike_eq217", "zernike_eq219", window, p_range=p_range, **common)
        return [_trial_check("Eq221-zernike-domination", report)]

    tasks.append(Task("Eq221-zernike-domination", "exact", domination))

    windows = {
        "FourierCircle": "|m|<=16",
        "AssocLaguerre": "j<=6",
        "PlaneZ": "j<=6",
        "SphericalY": "l<=12",
        "LaguerreM": "n<=30",
        "JacobiJ": "j<=4",
        "ZernikeW": "u+v<=12",
    }
    for spec in SEMINORMS.values():
        name = f"seminorm-monotonicity[{spec.name}]"

        def monotone(spec=spec, name=name):
            family = FamilyId.parse(spec.families[0], alpha)
            window = parse_window(family, windows[family.tag])
            steps = range(config.p_max) if spec.n_params == 1 else [(p, p) for p in range(config.p_max)]
            report = monotonicity_check(spec, window, p_range=steps, **common)
            return [_trial_check(name, report)]

        tasks.append(Task(name, "exact", monotone))
    return tasks


# ---------------------------------------------------------------- bounds


KERNEL_BOUNDS = (
    ("Eq66-assoc-laguerre-bound", "AssocLaguerre", "j<=6"),
    ("Eq66-plane-bound", "PlaneZ", "j<=6"),
    ("Eq213-zernike-w-bound", "ZernikeW", "u+v<=12"),
    ("sphere-harmonic-bound", "SphericalY", "l<=12"),
    ("zernike-radial-bound", "ZernikeR", "n<=16"),
)


def bound_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    families = _families(config, [tag for _, tag, _ in KERNEL_BOUNDS])
    for name, tag, text in KERNEL_BOUNDS:
        if tag not in families:
            continue

        def compute(tag=tag, text=text):
            family = FamilyId(tag)
            window = _family_window(config, family, text)
            return kernel_bound_check(family, window, config.samples, config.seed)

        tasks.append(_single(name, "exact", 1.0 + 1e-12, compute))
    if config.family is None:
        for case in POINT_BOUNDS:

            def run(case=case):
                report = point_evaluation_check(
                    case, trials=config.trials, seed=config.seed, rho_range=config.rho_range
                )
                return [_trial_check(case, report)]

            tasks.append(Task(case, "exact", run))
    return tasks


# ---------------------------------------------------------------- constants


def constant_tasks(config: SuiteConfig) -> List[Task]:
    tolerance = config.tolerance("ode")
    exact = config.tolerance("exact")
    fourier = FamilyId("FourierCircle")

    def closed(family, p, closed_form):
        def compute():
            value = continuity_constant(family, p)
            return abs(value - closed_form(p)), {"value": value, "closed_form": closed_form(p)}

        return compute

    def divergent(family, p):
        def compute():
            try:
                continuity_constant(family, p)
            except DivergentSeriesError as e:
                return 0.0, {"rejected": str(e)}
            return 1.0, {"reason": "divergent series was not rejected"}

        return compute

    def assoc_monotone():
        family = FamilyId("PlaneZ")
        details, worst = {}, 0.0
        for parity in ("integer", "half"):
            values = [partial_constant(family, 0, cutoff, parity) for cutoff in (1, 2, 4, 8, 16, 32)]
            drops = [max(0.0, a - b) for a, b in zip(values, values[1:])]
            worst = max(worst, max(drops))
            details[parity] = values
            if not all(math.isfinite(v) for v in values):
                worst = math.inf
        return worst, details

    def sphere():
        family = FamilyId("SphericalY")
        value = continuity_constant(family, 3)
        direct = partial_constant(family, 3, 20000)
        return abs(value - direct), {"value": value, "partial_sum": direct}

    return [
        _single("Eq13-fourier-constant[p=1]", "ode", tolerance, closed(fourier, 1, fourier_closed_form)),
        _single("fourier-constant[p=2]", "ode", tolerance, closed(fourier, 2, fourier_closed_form)),
        _single("Eq13-fourier-constant[p=0]-divergent", "exact", exact, divergent(fourier, 0)),
        _single(
            "Eq224-zernike-constant[p=2]",
            "ode",
            tolerance,
            closed(FamilyId("ZernikeW"), 2, zernike_closed_form),
        ),
        _single("Eq224-zernike-constant[p=1]-divergent", "exact", exact, divergent(FamilyId("ZernikeW"), 1)),
        _single("Eq71-assoc-constant-monotone", "exact", exact, assoc_monotone),
        _single("Eq121-sphere-constant[p=3]", "ode", tolerance, sphere),
    ]


# ---------------------------------------------------------------- transforms

TRANSFORM_WINDOWS = (
    ("FourierCircle", "|m|<=8", None),
    ("Hermite", "n<=20", None),
    ("LaguerreM", "n<=20", 0.5),
    ("AssocLaguerre", "j<=8,m=0", None),
    ("PlaneZ", "j<=6,parity=integer", None),
    ("PlaneZ", "j<=11/2,parity=half", None),
    ("SphericalY", "l<=10", None),
    ("JacobiJ", "j<=6,m=1,q=0", None),
    ("HypersphereN", "j<=3,q=1", None),
    ("ZernikeR", "n<=12,m=2", None),
    ("ZernikeW", "u+v<=8", None),
)


def transform_tasks(config: SuiteConfig) -> List[Task]:
    tasks = []
    tolerance = config.tolerance("quadrature")
    families = _families(config, [tag for tag, _, _ in TRANSFORM_WINDOWS])
    for tag, text, alpha in TRANSFORM_WINDOWS:
        if tag not in families:
            continue
        label = f"{tag}@{config.window or text}"

        def run(tag=tag, text=text, alpha=alpha, label=label):
            family = FamilyId.parse(tag, config.alpha if config.alpha is not None else alpha)
            window = _family_window(config, family, text)
            plan = _plan(family, window, config)
            v = random_coeffvec(window, config.seed, config.rho_range)
            details = {"orders": list(plan.orders)}
            if plan.warnings:
                details["warnings"] = list(plan.warnings)
            return [
                Check(
                    f"transforms-round-trip[{label}]",
                    round_trip_residual(family, window, v, plan),
                    tolerance,
                    dict(details),
                ),
                Check(
                    f"transforms-kernel-projection[{label}]",
                    kernel_projection_residual(family, window, v, plan, seed=config.seed),
                    tolerance,
                    dict(details),
                ),
                Check(
                    f"Eq9a-parseval[{label}]",
                    parseval_residual(family, window, v, plan),
                    tolerance,
                    dict(details),
                ),
            ]

        tasks.append(Task(f"transforms[{label}]", "quadrature", run))

    if "FourierCircle" in families:
        exact = config.tolerance("exact")

        def rotation():
            family = FamilyId("FourierCircle")
            window = parse_window(family, "|m|<=8")
            v = random_coeffvec(window, config.seed, config.rho_range)
            theta_1, theta_2 = 0.7, 2.1
            composed = rotate_circle(rotate_circle(v, theta_1), theta_2)
            direct = rotate_circle(v, theta_1 + theta_2)
            return [
                Check(
                    "Eq25-rotation-covariance",
                    rotation_covariance_residual(v, theta_1),
                    tolerance,
                ),
                Check(
                    "rotation-unitarity",
                    abs(rotate_circle(v, theta_1).norm0() - v.norm0()),
                    exact,
                ),
                Check(
                    "rotation-group-law",
                    float((composed.amplitudes - direct.amplitudes).abs().max()),
                    exact,
                ),
            ]

        tasks.append(Task("rotation", "exact", rotation))
    return tasks


# ---------------------------------------------------------------- ft


def ft_tasks(config: SuiteConfig) -> List[Task]:
    tolerance = config.tolerance("numeric")
    tasks = []
    for n in range(13):

        def run(n=n):
            residual, details = hermite_ft_residual(n, config.quad_order)
            shortfall = max(0.0, details["doubled_residual"] - max(residual, CONVERGED))
            return [
                Check(f"Eq97-hermite-ft[n={n}]", residual, tolerance, details),
                Check(
                    f"Eq97-hermite-ft-order-doubling[n={n}]",
                    shortfall,
                    0.0,
                    {"order": details["order"], "doubled_order": details["doubled_order"]},
                ),
            ]

        tasks.append(Task(f"Eq97-hermite-ft[n={n}]", "numeric", run))
    return tasks


# ---------------------------------------------------------------- crossfamily


def _worst(pairs) -> tuple:
    worst, details = 0.0, {}
    for residual, info in pairs:
        if residual >= worst:
            worst, details = residual, info
    return worst, details


def crossfamily_tasks(config: SuiteConfig) -> List[Task]:
    quadrature = config.tolerance("quadrature")
    exact = config.tolerance("exact")

    def legendre_jacobi():
        return _worst(
            cross_family_residual("legendre_jacobi", {"l": l, "m": m})
            for l in range(11)
            for m in range(-l, l + 1)
        )

    zernike_cases = [(n, m) for n in range(13) for m in range(-n, n + 1, 2)]

    def zernike_jacobi():
        return _worst(cross_family_residual("zernike_jacobi", {"n": n, "m": m}) for n, m in zernike_cases)

    def zernike_as_printed():
        return _worst(
            (details["as_printed_residual"], {"n": n, "m": m})
            for n, m in zernike_cases
            for _, details in [cross_family_residual("zernike_jacobi", {"n": n, "m": m})]
        )

    def plane_z():
        return _worst(
            cross_family_residual("plane_z_consistency", {"tj": tj, "tm": tm, "seed": config.seed})
            for tj in range(7)
            for tm in range(-tj, tj + 1, 2)
        )

    def symmetry(name, cases):
        def compute():
            return _worst((symmetry_residual(name, case, seed=config.seed), case) for case in cases)

        return compute

    jacobi_cases = [
        {"tj": tj, "tm": tm, "tq": tq}
        for tj in range(9)
        for tm in range(-tj, tj + 1, 2)
        for tq in range(-tj, tj + 1, 2)
    ]

    def oracle(kind, cases):
        def compute():
            return _worst(
                (recurrence_residual(kind, degree, order), {"degree": degree, "order": str(order)})
                for degree, order in cases
            )

        return compute

    return [
        _single("Eq164-legendre-jacobi", "quadrature", quadrature, legendre_jacobi),
        _single("Eq204-zernike-jacobi", "quadrature", quadrature, zernike_jacobi),
        _single("Eq204-zernike-jacobi-as-printed", "quadrature", math.inf, zernike_as_printed, True),
        _single("Eq49-plane-z-consistency", "exact", exact, plane_z),
        _single(
            "Eq68-assoc-laguerre-reflection",
            "exact",
            exact,
            symmetry(
                "Eq68-assoc-laguerre-reflection",
                [{"tj": tj, "tm": tm} for tj in range(9) for tm in range(-tj, tj + 1, 2)],
            ),
        ),
        _single("Eq161-jacobi-mq-swap", "exact", exact, symmetry("Eq161-jacobi-mq-swap", jacobi_cases)),
        _single(
            "Eq200-zernike-reflection",
            "exact",
            exact,
            symmetry(
                "Eq200-zernike-reflection",
                [{"n": n, "m": m} for n in range(17) for m in range(-n, n + 1, 2)],
            ),
        ),
        _single(
            "Eq210-zernike-w-conjugation",
            "exact",
            exact,
            symmetry(
                "Eq210-zernike-w-conjugation",
                [{"u": u, "v": v} for u in range(13) for v in range(13 - u)],
            ),
        ),
        _single("recurrence-oracle[hermite]", "exact", exact, oracle("hermite", [(n, 0) for n in range(11)])),
        _single(
            "recurrence-oracle[laguerre]",
            "exact",
            exact,
            oracle("laguerre", [(n, a) for n in range(11) for a in (0, 1, 0.5, 2.5)]),
        ),
        _single(
            "recurrence-oracle[legendre]",
            "exact",
            exact,
            oracle("legendre", [(l, m) for l in range(11) for m in range(l + 1)]),
        ),
    ]


SUITE_TASKS = {
    "orthonormality": orthonormality_tasks,
    "commutators": commutator_tasks,
    "casimir": casimir_tasks,
    "adjoint": adjoint_tasks,
    "weights": weight_tasks,
    "differential": differential_tasks,
    "seminorms": seminorm_tasks,
    "bounds": bound_tasks,
    "constants": constant_tasks,
    "transforms": transform_tasks,
    "ft": ft_tasks,
    "crossfamily": crossfamily_tasks,
}


def validate(config: SuiteConfig):
    """
    Rejects unknown names before any check runs.
    """
    for suite in config.suites:
        if suite not in SUITE_TASKS:
            raise ValueError(f"unknown suite {suite}, expected one of {sorted(SUITE_TASKS)}")
    if config.algebra is not None:
        algebra = get_algebra(config.algebra, config.alpha)
        if config.window is not None:
            parse_window(algebra.family, config.window)
    if config.family is not None:
        family = FamilyId.parse(config.family, config.alpha)
        if config.window is not None:
            parse_window(family, config.window)


def run_suite(config: SuiteConfig, logger=None) -> VerificationReport:
    validate(config)
    tasks = []
    for suite in config.suites:
        tasks += SUITE_TASKS[suite](config)
    progress = logger.progress if logger is not None else False
    timings = config.timings or (logger is not None and logger.do.times)
    start = time.perf_counter()
    if config.jobs == 1:
        results = [
            _run_task(task, config, timings)
            for task in tqdm(tasks, disable=not progress, desc=config.suite)
        ]
    else:
        results = Parallel(n_jobs=config.jobs, prefer="threads")(
            delayed(_run_task)(task, config, timings) for task in tasks
        )
    report = VerificationReport(config.suite, config.to_container())
    for checks in results:
        for check in checks:
            report.checks.append(check)
            if isinstance(check.details, dict):
                report.warnings += check.details.get("warnings", [])
                if "warning" in check.details:
                    report.warnings.append(f"{check.name}: {check.details['warning']}")
            if logger is not None:
                logger.log_check(check)
    report.runtime = time.perf_counter() - start
    return report

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.coeffs import CoeffVec
from algebra.tables import get_algebra
from basis.indices import FamilyId, parse_window
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
    trial_seeds,
)
from rhs.seminorms import (
    SeminormOverflowError,
    decay_rate,
    get_seminorm,
    membership_report,
    seminorm,
)


def test_fourier_seminorm_of_basis_vector(fourier_window):
    v = CoeffVec.basis_vector(fourier_window, (3,))
    assert seminorm(v, "fourier_eq10", 0) == pytest.approx(1.0)
    assert seminorm(v, "fourier_eq10", 2) == pytest.approx(10.0)


def test_zernike_l1_seminorm():
    window = parse_window(FamilyId("ZernikeW"), "u+v<=2")
    v = CoeffVec(window, {(1, 0): 1.0, (0, 2): -2.0})
    assert seminorm(v, "zernike_eq219", 1) == pytest.approx(2 + 2 * 3)


def test_seminorm_family_mismatch(fourier_window):
    v = CoeffVec.basis_vector(fourier_window, (0,))
    with pytest.raises(ValueError, match="not defined on"):
        seminorm(v, "zernike_eq217", 1)


def test_su11_eq149_needs_nonnegative_alpha():
    window = parse_window(FamilyId("LaguerreM", -0.5), "n<=4")
    v = CoeffVec.basis_vector(window, (0,))
    with pytest.raises(ValueError, match="alpha >= 0"):
        seminorm(v, "su11_eq149", 1)


def test_factorial_weights_overflow():
    window = parse_window(FamilyId("PlaneZ"), "j<=60,m=0")
    v = CoeffVec.basis_vector(window, (120, 0))
    with pytest.raises(SeminormOverflowError, match="exceeds double range"):
        seminorm(v, "su2_eq60", 4)


def test_membership_report_and_decay(fourier_window):
    v = random_coeffvec(fourier_window, seed=3, rho_range=(0.5, 0.5))
    assert decay_rate(v) == pytest.approx(-math.log(0.5), abs=1e-9)
    report = membership_report(v, "fourier_eq10", 3)
    assert report["spec"] == "fourier_eq10"
    assert all(report["finite"].values())


def test_trial_seeds_are_reproducible():
    assert trial_seeds(42, 5) == trial_seeds(42, 5)
    assert len(set(trial_seeds(42, 50))) == 50


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False), min_size=33, max_size=33),
    st.integers(min_value=0, max_value=5),
)
def test_seminorms_increase_with_p(values, p):
    window = parse_window(FamilyId("FourierCircle"), "|m|<=16")
    v = CoeffVec(window, np.array(values))
    assert seminorm(v, "fourier_eq10", p) <= seminorm(v, "fourier_eq10", p + 1) * (1 + 1e-12)


@pytest.mark.parametrize(
    "tag,generator,spec,window,options",
    [
        ("so2_fourier", "J", "fourier_eq10", "|m|<=16", {}),
        ("su2_assoc_laguerre", "J", "su2_eq80", "j<=6", {}),
        ("so32_spherical", "L", "so32_eq114", "l<=12", {}),
        ("su11_laguerre", "K-", "su11_eq138", "n<=30", {}),
        ("su11_laguerre", "K+", "su11_eq138", "n<=30", {"shape": "source"}),
        (
            "su11xsu11_zernike",
            "P",
            "zernike_eq219",
            "u+v<=12",
            {"constant": lambda p: 2**p + 1, "by": 0},
        ),
    ],
)
def test_continuity_inequalities(tag, generator, spec, window, options):
    algebra = get_algebra(tag, 1.0)
    report = continuity_inequality_check(
        algebra[generator],
        spec,
        parse_window(algebra.family, window),
        trials=20,
        seed=7,
        **options,
    )
    assert report["violations"] == 0
    assert report["max_violation"] == 0.0
    assert report["invalid"] < report["trials"]


def test_continuity_shape_is_validated():
    algebra = get_algebra("so2_fourier")
    with pytest.raises(ValueError, match="shape must be"):
        continuity_inequality_check(
            algebra["J"], "fourier_eq10", parse_window(algebra.family, "|m|<=4"), shape="sideways"
        )


def test_monotonicity_and_domination():
    window = parse_window(FamilyId("ZernikeW"), "u+v<=12")
    assert monotonicity_check("zernike_eq217", window, trials=10)["violations"] == 0
    report = domination_check("zernike_eq217", "zernike_eq219", window, trials=10)
    assert report["violations"] == 0


@pytest.mark.parametrize("p", [1, 2])
def test_fourier_constant_closed_form(p, tolerances):
    value = continuity_constant(FamilyId("FourierCircle"), p)
    assert value == pytest.approx(fourier_closed_form(p), abs=tolerances.ode)


def test_zernike_constant_closed_form(tolerances):
    value = continuity_constant(FamilyId("ZernikeW"), 2)
    assert value == pytest.approx(zernike_closed_form(2), abs=tolerances.ode)
    assert zernike_closed_form(2) == pytest.approx(math.sqrt(math.pi / 6))


@pytest.mark.parametrize("family,p", [("FourierCircle", 0), ("ZernikeW", 1), ("SphericalY", 1)])
def test_divergent_constants(family, p):
    with pytest.raises(DivergentSeriesError):
        continuity_constant(FamilyId(family), p)


@pytest.mark.parametrize("parity", ["integer", "half"])
def test_partial_constants_increase(parity):
    family = FamilyId("PlaneZ")
    values = [partial_constant(family, 0, cutoff, parity) for cutoff in (1, 2, 4, 8, 16, 32)]
    assert values == sorted(values)
    assert all(math.isfinite(v) for v in values)


@pytest.mark.parametrize("p", [1, 2])
@pytest.mark.parametrize("parity", ["integer", "half"])
def test_factorial_constant_settles(p, parity):
    family = FamilyId("PlaneZ")
    value = continuity_constant(family, p, parity=parity)
    assert math.isfinite(value)
    assert value == pytest.approx(partial_constant(family, p, 32, parity), abs=1e-10)


@pytest.mark.parametrize(
    "family,window",
    [
        ("PlaneZ", "j<=6"),
        ("AssocLaguerre", "j<=6"),
        ("ZernikeW", "u+v<=12"),
        ("SphericalY", "l<=12"),
        ("ZernikeR", "n<=16"),
    ],
)
def test_kernel_bounds(family, window):
    family = FamilyId(family)
    ratio, details = kernel_bound_check(family, parse_window(family, window), samples=2000, seed=1)
    assert ratio <= 1.0 + 1e-12
    assert "worst_index" in details


@pytest.mark.parametrize("case", sorted(POINT_BOUNDS))
def test_point_evaluation_bounds(case):
    report = point_evaluation_check(case, trials=10, seed=5, probes=64)
    assert report["violations"] == 0
    assert report["constant"] > 0


def test_unknown_seminorm():
    with pytest.raises(ValueError, match="unknown seminorm"):
        get_seminorm("sobolev")

import math

import numpy as np
import pytest
import torch
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.coeffs import CoeffVec
from algebra.tables import get_algebra
from basis.indices import FamilyId, parse_window
from basis.spherical import eval_sph_harm
from rhs.continuity import random_coeffvec
from transforms.crossfamily import (
    cross_family_residual,
    recurrence_residual,
    symmetry_residual,
)
from transforms.fourier import hermite_ft_residual, rotate_circle, rotation_covariance_residual
from transforms.plan import build_plan
from transforms.spectral import (
    analyze,
    gram_residual,
    kernel_projection_residual,
    multiplication_residual,
    parseval_residual,
    round_trip_residual,
    synthesize,
)

WINDOWS = [
    ("FourierCircle", "|m|<=8", None),
    ("Hermite", "n<=20", None),
    ("LaguerreM", "n<=20", 0.5),
    ("AssocLaguerre", "j<=8,m=0", None),
    ("PlaneZ", "j<=6,parity=integer", None),
    ("SphericalY", "l<=10", None),
    ("JacobiJ", "j<=6,m=1,q=0", None),
    ("HypersphereN", "j<=3,q=1", None),
    ("ZernikeR", "n<=12,m=2", None),
    ("ZernikeW", "u+v<=8", None),
]


@pytest.mark.parametrize("tag,text,alpha", WINDOWS)
def test_round_trip_and_parseval(tag, text, alpha, tolerances):
    family = FamilyId.parse(tag, alpha)
    window = parse_window(family, text)
    plan = build_plan(family, window)
    v = random_coeffvec(window, seed=11)
    assert round_trip_residual(family, window, v, plan) <= tolerances.quadrature
    assert parseval_residual(family, window, v, plan) <= tolerances.quadrature


@pytest.mark.parametrize("tag,text,alpha", WINDOWS[:4])
def test_kernel_projection(tag, text, alpha, tolerances):
    family = FamilyId.parse(tag, alpha)
    window = parse_window(family, text)
    assert kernel_projection_residual(family, window, seed=3) <= tolerances.quadrature


@pytest.mark.parametrize(
    "tag,text,alpha",
    [("FourierCircle", "|m|<=16", None), ("Hermite", "n<=32", None), ("LaguerreM", "n<=32", 2.5), ("ZernikeW", "u+v<=12", None)],
)
def test_gram(tag, text, alpha, tolerances):
    family = FamilyId.parse(tag, alpha)
    window = parse_window(family, text)
    residual, details = gram_residual(build_plan(family, window), window)
    assert residual <= tolerances.quadrature
    assert details["size"] > 0


def test_analyze_spherical_harmonic(tolerances):
    family = FamilyId("SphericalY")
    window = parse_window(family, "l<=4")

    def f(theta, phi):
        return math.sqrt(2.5) * eval_sph_harm(2, 1, theta, phi)

    v = analyze(f, family, window)
    expected = CoeffVec.basis_vector(window, (2, 1))
    assert torch.allclose(v.amplitudes, expected.amplitudes, atol=tolerances.quadrature)


def test_low_order_records_warning():
    family = FamilyId("Hermite")
    window = parse_window(family, "n<=20")
    with pytest.warns(UserWarning):
        plan = build_plan(family, window, 8)
    assert plan.warnings


def test_synthesize_checks_dimension(fourier_window):
    v = CoeffVec.basis_vector(fourier_window, (1,))
    with pytest.raises(ValueError, match="coordinates"):
        synthesize(v, (np.zeros(3), np.zeros(3)))


def test_multiplication_operators(tolerances):
    su11 = get_algebra("su11_laguerre", 1.0)
    residual, _ = multiplication_residual(su11["Y"], lambda y: y, parse_window(su11.family, "n<=30"))
    assert residual <= tolerances.quadrature
    zernike = get_algebra("su11xsu11_zernike")
    residual, _ = multiplication_residual(
        zernike["P"], lambda r, phi: r * np.exp(1j * phi), parse_window(zernike.family, "u+v<=12")
    )
    assert residual <= tolerances.quadrature


@settings(max_examples=25, deadline=None)
@given(
    st.floats(min_value=-10, max_value=10, allow_nan=False),
    st.floats(min_value=-10, max_value=10, allow_nan=False),
)
def test_rotation_group_law(theta_1, theta_2):
    window = parse_window(FamilyId("FourierCircle"), "|m|<=8")
    v = random_coeffvec(window, seed=0)
    composed = rotate_circle(rotate_circle(v, theta_1), theta_2)
    direct = rotate_circle(v, theta_1 + theta_2)
    assert torch.allclose(composed.amplitudes, direct.amplitudes, atol=1e-12)
    assert rotate_circle(v, theta_1).norm0() == pytest.approx(v.norm0(), abs=1e-12)


def test_rotation_covariance(fourier_window, tolerances):
    v = random_coeffvec(fourier_window, seed=2)
    assert rotation_covariance_residual(v, 0.7) <= tolerances.quadrature


def test_rotation_needs_circle():
    window = parse_window(FamilyId("Hermite"), "n<=3")
    with pytest.raises(ValueError, match="FourierCircle"):
        rotate_circle(CoeffVec.basis_vector(window, (0,)), 0.1)


@pytest.mark.parametrize("n", [0, 1, 4, 7, 12])
def test_hermite_eigenfunctions_of_fourier_transform(n, tolerances):
    residual, details = hermite_ft_residual(n)
    assert residual <= tolerances.numeric
    assert details["monotone"]


def test_legendre_jacobi_relation(tolerances):
    for l in range(6):
        for m in range(-l, l + 1):
            residual, _ = cross_family_residual("legendre_jacobi", {"l": l, "m": m})
            assert residual <= tolerances.quadrature, (l, m)


def test_zernike_jacobi_relation(tolerances):
    residual, details = cross_family_residual("zernike_jacobi", {"n": 6, "m": 2})
    assert residual <= tolerances.quadrature
    assert details["as_printed_residual"] > tolerances.quadrature


def test_plane_z_consistency(tolerances):
    residual, details = cross_family_residual("plane_z_consistency", {"tj": 3, "tm": 1})
    assert residual <= tolerances.exact
    assert details["periodicity"] <= tolerances.exact


def test_unknown_relation():
    with pytest.raises(ValueError, match="unknown relation"):
        cross_family_residual("bessel_hankel", {})


@pytest.mark.parametrize(
    "name,params",
    [
        ("Eq68-assoc-laguerre-reflection", {"tj": 5, "tm": 3}),
        ("Eq161-jacobi-mq-swap", {"tj": 6, "tm": 2, "tq": -4}),
        ("Eq200-zernike-reflection", {"n": 7, "m": 3}),
        ("Eq210-zernike-w-conjugation", {"u": 4, "v": 1}),
    ],
)
def test_symmetries(name, params, tolerances):
    assert symmetry_residual(name, params) <= tolerances.exact


@pytest.mark.parametrize(
    "kind,order", [("hermite", 0), ("laguerre", 0), ("laguerre", 1), ("laguerre", 0.5), ("legendre", 0), ("legendre", 3)]
)
def test_recurrence_oracles(kind, order, tolerances):
    for degree in range(3 if kind == "legendre" else 0, 11):
        assert recurrence_residual(kind, degree, order) <= tolerances.exact

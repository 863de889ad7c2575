import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from basis.base import orthonormal_scale
from basis.fourier import eval_fourier
from basis.hermite import eval_hermite, hermite_exact
from basis.indices import FamilyId, IndexConstraintError, MultiIndex, parse_window
from basis.jacobi import eval_jacobi, eval_jacobi_J
from basis.laguerre import eval_assoc_laguerre, eval_laguerre_M, eval_plane_z
from basis.odes import ODES
from basis.spherical import eval_sph_harm
from basis.zernike import eval_zernike, eval_zernike_W, zernike_radial
from utils.common import parse_half_integer


def test_fourier_values():
    assert eval_fourier(0, 1.234) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert eval_fourier(1, 0.0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert eval_fourier(3, math.pi) == pytest.approx(-1 / math.sqrt(2 * math.pi))


def test_hermite_values():
    assert eval_hermite(0, 0.0) == pytest.approx(math.pi**-0.25, abs=1e-15)
    assert eval_hermite(1, 0.0) == 0.0
    assert eval_hermite(5, 1.3) == pytest.approx(hermite_exact(5, 1.3), abs=1e-12)


def test_laguerre_m_values():
    y = np.linspace(0.0, 5.0, 11)
    alpha = 1.5
    expected = y ** (alpha / 2) * np.exp(-y / 2) / math.sqrt(math.gamma(alpha + 1))
    np.testing.assert_allclose(eval_laguerre_M(0, alpha, y), expected, atol=1e-14)
    assert eval_laguerre_M(1, 0.0, 0.0) == pytest.approx(1.0)
    assert eval_laguerre_M(3, 2.0, 0.0) == 0.0


def test_assoc_laguerre_values():
    x = np.linspace(0.0, 6.0, 13)
    np.testing.assert_allclose(eval_assoc_laguerre(0, 0, x), np.exp(-x / 2), atol=1e-15)
    np.testing.assert_allclose(eval_assoc_laguerre(2, 2, x), eval_assoc_laguerre(2, -2, x))


def test_plane_z_half_integer_antiperiodic():
    r, phi = np.array([0.3, 1.1, 2.0]), np.array([0.2, 1.7, 4.0])
    np.testing.assert_allclose(
        eval_plane_z(1, 1, r, phi + 2 * math.pi), -eval_plane_z(1, 1, r, phi), atol=1e-14
    )


def test_spherical_values():
    theta, phi = np.array([0.1, 1.0, 2.5]), np.array([0.0, 2.0, 5.0])
    np.testing.assert_allclose(eval_sph_harm(0, 0, theta, phi), 1 / math.sqrt(2 * math.pi))
    np.testing.assert_allclose(
        eval_sph_harm(1, 0, theta, phi), np.cos(theta) / math.sqrt(2 * math.pi), atol=1e-15
    )


def test_spherical_bound(rng):
    theta, phi = rng.uniform(0, math.pi, 10000), rng.uniform(0, 2 * math.pi, 10000)
    for l in range(6):
        for m in range(-l, l + 1):
            assert np.all(np.abs(eval_sph_harm(l, m, theta, phi)) ** 2 <= 1 / (2 * math.pi) + 1e-12)


def test_jacobi_values():
    x = np.linspace(-1.0, 1.0, 21)
    np.testing.assert_allclose(eval_jacobi_J(0, 0, 0, x), 1.0)
    np.testing.assert_allclose(eval_jacobi_J(2, 0, 0, x), x, atol=1e-15)
    np.testing.assert_allclose(eval_jacobi_J(4, 2, 0, x), eval_jacobi_J(4, 0, 2, x), atol=1e-14)


@pytest.mark.parametrize("n", range(0, 17))
def test_zernike_radial_edge(n):
    for m in range(-n, n + 1, 2):
        assert zernike_radial(n, m, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_zernike_w_conjugation():
    r, phi = np.array([0.2, 0.7]), np.array([0.4, 3.0])
    np.testing.assert_allclose(eval_zernike_W(3, 1, r, phi), np.conj(eval_zernike_W(1, 3, r, phi)))


@pytest.mark.parametrize(
    "family,comp,message",
    [
        ("SphericalY", (1, 2), r"\|m\| <= l violated"),
        ("ZernikeR", (3, 0), r"\(n - \|m\|\)/2 integer violated"),
        ("AssocLaguerre", (2, 1), "j - m integer violated"),
        ("Hermite", (-1,), "n >= 0 violated"),
    ],
)
def test_index_constraints(family, comp, message):
    with pytest.raises(IndexConstraintError, match=message):
        MultiIndex(FamilyId(family), comp)


def test_family_aliases():
    assert FamilyId.parse("zernike-r").tag == "ZernikeR"
    assert FamilyId.parse("sph_y").tag == "SphericalY"
    assert FamilyId.parse("laguerre-m").alpha == 0.0
    with pytest.raises(ValueError, match="unknown family"):
        FamilyId.parse("bessel")


def test_window_parsing():
    window = parse_window(FamilyId("JacobiJ"), "j<=2,m=1/2,parity=half")
    assert window.max_degree == 2
    assert window.parity == "half"
    assert all(comp[1] == 1 and comp[0] % 2 == 1 for comp in window.indices)
    assert window.to_text() == "j<=2,m=1/2,parity=half"
    assert len(parse_window(FamilyId("ZernikeW"), "u+v<=3")) == 10
    assert len(parse_window(FamilyId("FourierCircle"), "|m|<=16")) == 33


def test_window_rejects_unknown_bound():
    with pytest.raises(ValueError, match="not supported"):
        parse_window(FamilyId("Hermite"), "j<=3")


@given(st.integers(min_value=-200, max_value=200))
def test_half_integer_parsing(doubled):
    text = str(Fraction(doubled, 2))
    assert parse_half_integer(text) == doubled
    assert parse_half_integer(doubled / 2) == doubled


def test_half_integer_rejects():
    with pytest.raises(ValueError, match="not a half-integer"):
        parse_half_integer("1/3")


@pytest.mark.parametrize(
    "name,args,points",
    [
        ("Eq37-laguerre-ode", (5, 1.5), np.linspace(0.5, 10, 41)),
        ("Eq40-assoc-laguerre-ode", (6, -2), np.linspace(0.5, 10, 41)),
        ("hermite-ode", (6,), np.linspace(-4, 4, 41)),
        ("legendre-ode", (5, 2), np.linspace(-0.9, 0.9, 41)),
        ("Eq199-zernike-ode", (6, 2), np.linspace(0.2, 0.9, 41)),
    ],
)
def test_ode_residuals(name, args, points, tolerances):
    assert ODES[name](*args, points) <= tolerances.ode


def test_orthonormal_scale():
    assert orthonormal_scale(FamilyId("SphericalY"), (2, 1)) == (
        pytest.approx(math.sqrt(2.5)),
        "dcos(theta) dphi",
    )
    scale, _ = orthonormal_scale(FamilyId("JacobiJ"), MultiIndex(FamilyId("JacobiJ"), (2, 0, 0)))
    assert scale == pytest.approx(math.sqrt(1.5))
    with pytest.raises(IndexConstraintError):
        orthonormal_scale(FamilyId("SphericalY"), (1, 2))


def test_variant_dispatch():
    r, phi, chi = np.array([0.3, 0.8]), np.array([0.1, 2.0]), np.array([1.0, 4.0])
    np.testing.assert_allclose(eval_zernike((4, 2), r), zernike_radial(4, 2, r))
    np.testing.assert_allclose(eval_zernike((3, 1), r, phi, variant="W"), eval_zernike_W(3, 1, r, phi))
    x = np.array([-0.4, 0.5])
    n = eval_jacobi(2, 2, 0, x, phi, chi, variant="N")
    np.testing.assert_allclose(np.abs(n), math.sqrt(1.5) * np.abs(eval_jacobi_J(2, 2, 0, x)), atol=1e-15)
    with pytest.raises(ValueError, match="needs phi"):
        eval_zernike((1, 1), r, variant="W")
    with pytest.raises(NotImplementedError):
        eval_jacobi(2, 0, 0, x, variant="P")

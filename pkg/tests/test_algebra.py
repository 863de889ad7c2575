import math

import numpy as np
import pytest
import torch
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.checks import (
    adjoint_pair_residual,
    cartan_weight_residual,
    casimir_residual,
    commutator_residual,
    composition_residual,
)
from algebra.coeffs import CoeffVec
from algebra.generators import OperatorExpr, WindowOverflowError, apply_generator
from algebra.realizations import UnknownRealizationError, differential_consistency
from algebra.tables import ALGEBRAS, get_algebra
from basis.indices import IndexConstraintError, MultiIndex, parse_window


@pytest.mark.parametrize("tag", sorted(ALGEBRAS))
def test_commutation_tables(tag, tolerances):
    algebra = get_algebra(tag)
    for text in algebra.window_options():
        window = parse_window(algebra.family, text)
        for relation in algebra.commutators():
            residual, details = commutator_residual(
                relation.left, relation.right, relation.expected, window
            )
            assert residual <= tolerances.exact, relation.label
            assert details["interior"] > 0


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0, 2.5])
def test_su11_casimir(alpha, tolerances):
    algebra = get_algebra("su11_laguerre", alpha)
    residual, details = casimir_residual(algebra, parse_window(algebra.family, "n<=30"))
    assert residual <= tolerances.exact
    (eigenvalues,) = details.values()
    assert eigenvalues["eigenvalue_min"] == pytest.approx((alpha**2 - 1) / 4, abs=1e-12)
    assert eigenvalues["eigenvalue_max"] == pytest.approx((alpha**2 - 1) / 4, abs=1e-12)


def test_heisenberg_number_identity(tolerances):
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=20")
    for label, expression in algebra.identities():
        residual, _ = composition_residual(expression, OperatorExpr.zero(algebra.family), window)
        assert residual <= tolerances.exact, label


@pytest.mark.parametrize("tag", sorted(ALGEBRAS))
def test_adjoint_pairs(tag, tolerances):
    algebra = get_algebra(tag)
    window = parse_window(algebra.family, algebra.default_window)
    for plus, minus in algebra.adjoint_pairs():
        residual, details = adjoint_pair_residual(algebra[plus], algebra[minus], window)
        assert residual <= tolerances.exact
        assert details["pairs"] > 0


@pytest.mark.parametrize("tag", sorted(ALGEBRAS))
def test_cartan_weights(tag, tolerances):
    algebra = get_algebra(tag)
    window = parse_window(algebra.family, algebra.default_window)
    for ladder, cartan in algebra.weight_pairs():
        residual, _ = cartan_weight_residual(algebra[ladder], algebra[cartan], window)
        assert residual <= tolerances.exact, (ladder, cartan)


def test_su22_composition(tolerances):
    algebra = get_algebra("su22_jacobi")
    window = parse_window(algebra.family, "j<=5")
    for sign in "+-":
        residual, _ = composition_residual(
            algebra["FC" + sign],
            algebra["K" + sign],
            window,
            columns=lambda c: abs(c[1]) > abs(c[2]),
        )
        assert residual <= tolerances.exact


def test_unknown_algebra():
    with pytest.raises(ValueError, match="unknown algebra"):
        get_algebra("so5_nothing")


def test_ladder_overflow_and_growth():
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=4")
    top = CoeffVec.basis_vector(window, (4,))
    raising = OperatorExpr.of(algebra["a+"])
    with pytest.raises(WindowOverflowError, match="leaves window"):
        raising.apply(top)
    grown = raising.apply(top, grow_window=True)
    assert grown[(5,)] == pytest.approx(math.sqrt(5))


def test_grown_window_does_not_depend_on_amplitudes():
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=20")
    zero = CoeffVec(window, np.zeros(len(window)))
    bottom = CoeffVec.basis_vector(window, (0,))
    top = CoeffVec.basis_vector(window, (20,))
    q = algebra["Q"]
    images = [q.apply(v, grow_window=True) for v in (zero, bottom, top)]
    assert {image.window.to_text() for image in images} == {"n<=21"}
    assert images[0].norm0() == 0.0
    total = images[0] * 0 + images[1] + images[2]
    assert total[(21,)] == pytest.approx(math.sqrt(21 / 2))


def test_coeffvec_rejects_outside_window():
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=4")
    with pytest.raises(IndexConstraintError, match="outside window"):
        CoeffVec(window, {(7,): 1.0})


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False), min_size=21, max_size=21),
    st.complex_numbers(max_magnitude=10, allow_nan=False),
)
def test_generator_application_is_linear(values, scalar):
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=20")
    v = CoeffVec(window, np.array(values))
    w = CoeffVec(window, np.ones(len(window)))
    q = algebra["Q"]
    lhs = q.apply(v * scalar + w, grow_window=True)
    rhs = q.apply(v, grow_window=True) * scalar + q.apply(w, grow_window=True)
    assert torch.allclose(lhs.amplitudes, rhs.amplitudes, atol=1e-9)


@pytest.mark.parametrize(
    "tag,name,comp",
    [
        ("heisenberg_hermite", "a", (3,)),
        ("heisenberg_hermite", "a+", (2,)),
        ("heisenberg_hermite", "P", (4,)),
        ("so2_fourier", "J", (-3,)),
        ("su11_laguerre", "K+", (2,)),
        ("su11_laguerre", "K-", (3,)),
        ("su2_assoc_laguerre", "K+", (4, -2)),
        ("su2_assoc_laguerre", "K-", (4, 0)),
    ],
)
def test_differential_realizations(tag, name, comp, tolerances):
    algebra = get_algebra(tag, 1.0)
    index = MultiIndex(algebra.family, comp)
    assert differential_consistency(algebra[name], index, name=name) <= tolerances.numeric


def test_expression_needs_realization_name():
    algebra = get_algebra("heisenberg_hermite")
    with pytest.raises(UnknownRealizationError):
        differential_consistency(algebra["Q"] * 2, MultiIndex(algebra.family, (1,)))


def test_apply_generator():
    algebra = get_algebra("heisenberg_hermite")
    window = parse_window(algebra.family, "n<=6")
    lowered = apply_generator(algebra["a"], CoeffVec.basis_vector(window, (3,)))
    assert lowered[(2,)] == pytest.approx(math.sqrt(3))
    assert lowered.norm0() == pytest.approx(math.sqrt(3))
    fourier = get_algebra("so2_fourier")
    with pytest.raises(ValueError, match="acts on"):
        apply_generator(fourier["J"], CoeffVec.basis_vector(window, (0,)))

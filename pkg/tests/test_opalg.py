from fractions import Fraction

import pytest

from coalspin.opalg import (
    DimensionMismatch,
    ScalarPoly,
    adjoint,
    canonicalize,
    commutator,
    const,
    dumps,
    imag,
    loads,
    p,
    parse_rational,
    rpow,
    sigma,
    substitute_params,
    sym,
    x,
)
from coalspin import models

from oracle import composed_equals_product, same_action

IH = imag() * sym("hbar")


def test_p_times_x_is_normal_ordered():
    assert p(1) * x(1) == x(1) * p(1) - IH


def test_pauli_product():
    assert sigma(1) * sigma(2) == imag() * sigma(3)
    assert sigma(2) * sigma(1) == -(imag() * sigma(3))
    assert sigma(3) * sigma(3) == const(1)


def test_p_times_inverse_r():
    expect = rpow(-1) * p(1) + IH * x(1) * rpow(-3)
    assert p(1) * rpow(-1) == expect
    assert same_action(p(1) * rpow(-1), expect)


def test_commutator_examples():
    assert commutator(x(1), x(2)).is_zero()
    ls = [x(2) * p(3) - x(3) * p(2), x(3) * p(1) - x(1) * p(3), x(1) * p(2) - x(2) * p(1)]
    assert commutator(ls[0], ls[1]) == IH * ls[2]


def test_sl2_single_variable_commutator():
    jp = p(1, 1) * p(1, 1)
    j3 = x(1, 1) * p(1, 1) - (imag(1) * sym("hbar", 1)).scale(Fraction(1, 2))
    assert commutator(j3, jp) == (imag(1) * sym("hbar", 1) * jp).scale(2)


def test_x3_squared_is_eliminated():
    assert x(3) * x(3) == rpow(2) - x(1) * x(1) - x(2) * x(2)
    assert (x(1) * x(1) + x(2) * x(2) + x(3) * x(3) - rpow(2)).is_zero()


def test_inverse_r_squared_times_x3_cubed():
    lhs = rpow(-2) * x(3) ** 3
    expect = x(3) - rpow(-2) * x(1) * x(1) * x(3) - rpow(-2) * x(2) * x(2) * x(3)
    assert lhs == expect
    assert same_action(lhs, expect)


def test_adjoint_examples():
    assert adjoint(IH * p(1)) == -(IH * p(1))
    h = models.element("H3")
    assert adjoint(h) == h


def test_adjoint_of_a3_against_catalog_dagger():
    # reported quantity; with the stored normalization the two coincide exactly
    diff = adjoint(models.element("A3")) - models.element("A3_DAG")
    assert diff.is_zero()


def test_substitute_gamma_zero_gives_hydrogen():
    h = substitute_params(models.element("H3"), {"gamma": 0})
    lap = p(1) * p(1) + p(2) * p(2) + p(3) * p(3)
    # p^2 = -hbar^2 Laplacian, so this is -(hbar^2/2) Laplacian - alpha/r
    assert h == lap.scale(Fraction(1, 2)) - sym("alpha") * rpow(-1)


def test_substitute_in_f_poly():
    f = substitute_params(models.element("F_POLY"), {"hbar": 1, "alpha": 1})
    h = substitute_params(models.element("H3"), {"hbar": 1, "alpha": 1})
    s = substitute_params(models.element("SIGMA_DOT_L"), {"hbar": 1})
    g = sym("gamma")
    expect = const(1) + h * ((s * s).scale(4) + (g.scale(6) + 5) * s + ((g + 1) * (g + 1)).scale(2))
    # products reintroduce the symbolic hbar of the commutator; bind it again
    assert f == substitute_params(expect, {"hbar": 1})


def test_substitute_nothing_is_identity():
    e = models.element("X_1")
    assert substitute_params(e, {}) == e


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        x(1, 2) * x(1, 3)
    with pytest.raises(DimensionMismatch):
        x(1, 2) + p(1, 3)
    with pytest.raises(ValueError):
        x(3, 2)


def test_canonicalize_is_identity_on_stored_elements():
    e = models.element("Y_2")
    assert canonicalize(e) == e
    assert canonicalize(canonicalize(e)) == canonicalize(e)


def test_serialization_round_trip():
    for name in ("H3", "X_1", "A3", "G_POLY"):
        e = models.element(name)
        text = dumps(e)
        assert loads(text) == e
        assert dumps(loads(text)) == text


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-2") == -2
    with pytest.raises(ValueError):
        parse_rational("0.5x")


def test_scalar_poly_arithmetic():
    h = ScalarPoly.symbol("hbar")
    i = ScalarPoly.imag_unit()
    assert i * i == ScalarPoly.const(-1)
    assert (h + 1) * (h - 1) == h * h - 1
    assert (h * h).substitute({"hbar": Fraction(2, 3)}) == ScalarPoly.const(Fraction(4, 9))


@pytest.mark.parametrize(
    "a,b",
    [
        (p(1), rpow(-1)),
        (p(2) * p(3), rpow(-3) * x(1) * x(3)),
        (sigma(2) * p(3) * sym("gamma"), x(3) * x(3) * sigma(1)),
        (rpow(1) * p(1), p(1) * rpow(-2) * x(2)),
        (models.element("SIGMA_DOT_L"), rpow(-1) * x(3)),
    ],
)
def test_products_agree_with_composition(a, b):
    assert composed_equals_product(a, b)

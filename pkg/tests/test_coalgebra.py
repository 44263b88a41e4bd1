from fractions import Fraction

import pytest

from coalspin.coalgebra import casimir, partial_casimirs, realize_sl2, verify_structure
from coalspin.opalg import commutator, const, imag, p, rpow, sym, x

from oracle import same_action


def hb(n=3):
    return sym("hbar", n)


def test_single_variable_realization():
    real = realize_sl2({1}, 1)
    assert real.j_plus == p(1, 1) * p(1, 1)
    assert real.j_minus == x(1, 1) * x(1, 1)
    assert real.j_3 == x(1, 1) * p(1, 1) - (imag(1) * hb(1)).scale(Fraction(1, 2))


def test_three_variable_j_minus_is_r_squared():
    assert realize_sl2((1, 2, 3), 3).j_minus == rpow(2)


def test_two_variable_relation():
    real = realize_sl2((1, 2), 2)
    ih = imag(2) * hb(2)
    assert (commutator(real.j_minus, real.j_plus) - (ih * real.j_3).scale(4)).is_zero()


def test_casimir_n1_is_constant():
    c = casimir(realize_sl2((1,), 1))
    assert c == (hb(1) * hb(1)).scale(Fraction(-3, 4))


def test_casimir_n3_is_angular_momentum_squared():
    c = casimir(realize_sl2((1, 2, 3), 3))
    ls = [x(2) * p(3) - x(3) * p(2), x(3) * p(1) - x(1) * p(3), x(1) * p(2) - x(2) * p(1)]
    l2 = ls[0] * ls[0] + ls[1] * ls[1] + ls[2] * ls[2]
    assert c == l2 - (hb() * hb()).scale(Fraction(3, 4))
    assert same_action(c + hb() * hb(), l2 + (hb() * hb()).scale(Fraction(1, 4)))


def test_casimir_n2_plus_hbar_squared_is_l0_squared():
    c = casimir(realize_sl2((1, 2), 2))
    l0 = x(1, 2) * p(2, 2) - x(2, 2) * p(1, 2)
    assert c + hb(2) * hb(2) == l0 * l0


def test_casimir_counts():
    assert len(partial_casimirs(3)) == 3
    assert len(partial_casimirs(2)) == 1
    with pytest.raises(ValueError):
        partial_casimirs(4)


def test_right_casimir_commutes_with_j_plus():
    right = partial_casimirs(3).right[0]
    assert commutator(right, realize_sl2((1, 2, 3), 3).j_plus).is_zero()


def test_heisenberg_action():
    real = realize_sl2((1, 2), 2)
    for k in (1, 2):
        assert commutator(real.j_3, p(k, 2)) == imag(2) * hb(2) * p(k, 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_verify_structure(n):
    report = verify_structure(n)
    assert report.passed, report.to_text(residuals=True)


def test_bad_subsets():
    with pytest.raises(ValueError):
        realize_sl2((), 3)
    with pytest.raises(ValueError):
        realize_sl2((1, 4), 3)
    with pytest.raises(ValueError):
        realize_sl2((1, 1), 3)


def test_constant_is_central():
    assert commutator(const(5), realize_sl2((1, 2, 3)).j_3).is_zero()

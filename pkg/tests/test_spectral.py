import json
import math
from fractions import Fraction

import pytest

from coalspin.spectral import (
    DomainError,
    RadialProblem,
    closed_form_energy,
    closed_form_energy_exact,
    closed_form_wavefunction,
    default_problem,
    degeneracy_table,
    degeneracy_to_json,
    fd_spectrum,
    grid_study,
    laguerre,
    laguerre_poly,
    parse_number,
    residual_check_exact,
    rows_to_csv,
    same_l_overlap_vanishes,
    sigma_dot_l_eigen_check,
    spectrum_rows,
    spinor_coefficients,
    spinor_overlap,
)

UNIT = {"hbar": 1, "alpha": 1}


def params(gamma):
    return {**UNIT, "gamma": gamma}


def test_closed_form_examples():
    assert closed_form_energy(0, 1, "plus", params(0)) == -0.5
    assert closed_form_energy_exact(0, 1, "plus", params(Fraction(1, 3))) == Fraction(-9, 32)
    # the (minus, 2j = -1) sector is the l = 0 orbital on the minus branch
    assert closed_form_energy_exact(0, -1, "minus", params(Fraction(1, 3))) == Fraction(-9, 8)
    assert closed_form_energy_exact(0, 1, "minus", params(Fraction(1, 3))) == Fraction(-9, 50)


def test_hbar_and_alpha_scaling():
    e = closed_form_energy_exact(1, 3, "plus", {"hbar": 2, "alpha": 3, "gamma": Fraction(1, 4)})
    n_eff = 1 + 1 + Fraction(1, 4) + 1
    assert e == Fraction(-9, 2 * 4) / n_eff**2


def test_domain_violations():
    with pytest.raises(DomainError):
        closed_form_energy(0, 1, "plus", params(-2))
    with pytest.raises(DomainError):
        closed_form_energy(0, -1, "minus", params(Fraction(7, 5)))
    with pytest.raises(ValueError):
        closed_form_energy(0, 2, "plus", params(0))
    with pytest.raises(ValueError):
        closed_form_energy(0, 1, "plus", {"hbar": 1, "alpha": -1, "gamma": 0})


def test_monotone_in_n():
    for branch, two_j in (("plus", 1), ("plus", 3), ("minus", 1), ("minus", 3)):
        es = [closed_form_energy(n, two_j, branch, params(0.3)) for n in range(6)]
        assert all(a < b for a, b in zip(es, es[1:]))


def test_parse_number_keeps_rationals_exact():
    assert parse_number("3/1") == Fraction(3)
    assert parse_number("1/3") == Fraction(1, 3)
    assert isinstance(parse_number("0.3"), float)
    assert isinstance(parse_number("1e-1"), float)
    assert parse_number("-2") == -2
    with pytest.raises(ValueError):
        parse_number("abc")


def test_laguerre_against_explicit_forms():
    x = 0.7
    assert laguerre(0, 2.5, x) == 1
    assert laguerre(1, 1, x) == pytest.approx(2 - x)
    assert laguerre(2, 0.5, x) == pytest.approx(x * x / 2 - 2.5 * x + 1.5 * 2.5 / 2)
    assert laguerre_poly(2, Fraction(1, 2)) == [Fraction(15, 8), Fraction(-5, 2), Fraction(1, 2)]


def test_wavefunction_value():
    assert closed_form_wavefunction(0, 1, "plus", params(0), 1.0) == pytest.approx(math.exp(-1))
    # n = 1, j = 1/2: r^0 exp(-r/2) L_1^1(r) = exp(-1/2) (2 - 1) at r = 1
    assert closed_form_wavefunction(1, 1, "plus", params(0), 1.0) == pytest.approx(math.exp(-0.5), rel=1e-14)


@pytest.mark.parametrize("gamma,branch,two_j", [(0, "plus", 1), (0.3, "plus", 3), (0.5, "minus", 1), (0.5, "minus", -1)])
def test_wavefunction_small_r_power(gamma, branch, two_j):
    lam = (two_j - 1) / 2 + gamma if branch == "plus" else (two_j + 1) / 2 - gamma
    r = 1e-6
    ratio = closed_form_wavefunction(0, two_j, branch, params(gamma), 2 * r) / closed_form_wavefunction(
        0, two_j, branch, params(gamma), r
    )
    assert ratio == pytest.approx(2**lam, rel=1e-5)


def test_residual_examples():
    assert residual_check_exact(0, 1, "plus", params(0)) == []
    assert residual_check_exact(2, 1, "plus", params(Fraction(1, 3))) == []
    assert residual_check_exact(2, 1, "plus", params(Fraction(1, 3)), flip_centrifugal=True) != []


def test_residual_needs_rationals():
    with pytest.raises((TypeError, ValueError)):
        residual_check_exact(0, 1, "plus", params(0.3))


def test_fd_hydrogen_s_wave():
    prob = default_problem("plus", 0, 2, params(0.0))
    res = fd_spectrum(prob, 3)
    got = [lv.energy_fd for lv in res.levels]
    assert got == pytest.approx([-0.5, -0.125, -1 / 18], rel=5e-6)
    assert not res.truncated


def test_fd_plain_scheme_on_hydrogen():
    prob = default_problem("plus", 1, 1, params(0.0), scheme="plain")
    res = fd_spectrum(prob, 2)
    assert [lv.rel_error for lv in res.levels] == [pytest.approx(0, abs=5e-6)] * 2


def test_fd_small_box_flags_truncation():
    prob = RadialProblem(1.0, 1.0, 0.0, "plus", 0, r_max=10.0, points=2000)
    res = fd_spectrum(prob, 6)
    assert res.truncated
    assert len(res.levels) < 6


def test_fd_problem_validation():
    with pytest.raises(ValueError):
        RadialProblem(1.0, 1.0, 0.0, "plus", 0, r_max=-1.0)
    with pytest.raises(ValueError):
        RadialProblem(1.0, 1.0, 0.0, "plus", 0, r_max=10.0, points=10)
    with pytest.raises(ValueError):
        RadialProblem(1.0, 1.0, 0.0, "plus", 0, r_max=10.0, scheme="spectral")


def test_grid_study_shows_second_order():
    rows = grid_study("plus", 0, 0, params(0))
    assert len(rows) == 3
    for row in rows[1:]:
        assert row.ratio == pytest.approx(4.0, rel=0.02)


def test_spectrum_rows_and_csv():
    rows = spectrum_rows(params(0.0), lmax=1, nmax=1)
    assert all(r.ok() for r in rows)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "branch,l,2j,n,E_closed,E_fd,rel_error,status"
    assert len(text.splitlines()) == 1 + len(rows)


def test_spectrum_rows_flag_domain():
    rows = spectrum_rows(params(Fraction(3)), lmax=2, nmax=0, numeric=False)
    flagged = [r for r in rows if r.status.startswith("domain")]
    assert {(r.branch, r.l) for r in flagged} == {("minus", 0), ("minus", 1), ("minus", 2)}


def test_degeneracy_hydrogen():
    levels = degeneracy_table(params(0), 3)
    assert [lv.multiplicity for lv in levels] == [2, 8, 18]
    assert [lv.energy_exact for lv in levels] == [Fraction(-1, 2), Fraction(-1, 8), Fraction(-1, 18)]
    second = {(n, tj, br) for n, tj, br in levels[1].states}
    assert second == {(1, 1, "plus"), (0, 3, "plus"), (0, 1, "minus")}
    data = json.loads(degeneracy_to_json(levels, params(0), 3))
    assert [lv["multiplicity"] for lv in data["levels"]] == [2, 8, 18]


def test_degeneracy_split_by_gamma():
    levels = degeneracy_table(params(Fraction(3, 10)), 2)
    assert sum(lv.multiplicity for lv in levels) == 2 + 8
    # plus-branch states sharing n + l stay degenerate, the minus one splits off
    assert [lv.multiplicity for lv in levels] == [2, 2, 6]


def test_spinor_examples():
    c = spinor_coefficients(1, 1, "plus")
    assert (c.upper_sq, c.lower_sq) == (1, 0)
    for two_j in (1, 3, 5):
        for two_k in range(-two_j, two_j + 1, 2):
            for branch in ("plus", "minus"):
                s = spinor_coefficients(two_j, two_k, branch)
                assert s.norm_sq == 1
                assert sigma_dot_l_eigen_check(s)
    assert spinor_overlap(spinor_coefficients(1, 1, "plus"), spinor_coefficients(1, 1, "minus")) == 0


def test_printed_minus_sign_is_not_an_eigenvector():
    assert not sigma_dot_l_eigen_check(spinor_coefficients(1, 1, "minus", printed_sign=True))


def test_same_orbital_spinors_orthogonal():
    for l in (1, 2, 3):
        for two_k in range(-(2 * l - 1), 2 * l, 2):
            assert same_l_overlap_vanishes(two_k, l)


def test_spinor_bad_k():
    with pytest.raises(ValueError):
        spinor_coefficients(1, 3, "plus")
    with pytest.raises(ValueError):
        spinor_coefficients(1, 0, "plus")

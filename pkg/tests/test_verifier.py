import json

import pytest

from coalspin import models
from coalspin.opalg import DimensionMismatch, Element, ScalarPoly, commutator, p, x
from coalspin.report import reports_to_json
from coalspin.verifier import (
    ALL_SUITES,
    UnknownSuite,
    check_commutes,
    fit_g,
    lplus_lminus_delta_fit,
    parse_suite_id,
    printed_f_coefficients,
    solve_closure_coefficients,
)
from coalspin.models import AL, GA, HB, I_UNIT

el = models.element


def test_check_commutes_examples():
    assert check_commutes(el("H3"), el("J_1")).passed
    assert check_commutes(el("H3"), el("SIGMA_DOT_L")).passed
    assert check_commutes(x(1), p(2)).passed
    res = check_commutes(x(1), p(1))
    assert not res.passed and res.residual_terms == 1
    with pytest.raises(DimensionMismatch):
        check_commutes(x(1, 2), x(1, 3))


@pytest.mark.parametrize("suite", ALL_SUITES)
def test_every_suite_passes(suite_report, suite):
    report = suite_report(suite)
    assert report.passed, report.to_text(residuals=True)


def test_o3_2d_named_relation(suite_report):
    rel = suite_report("O3_2D").get("[R1,L]=-ihR2")
    assert rel.passed and rel.residual_terms == 0


def test_unknown_suites():
    for bad in ("NOPE", "SL2", "SL2(4)", "INTERTWINE(1)", "CONSERVE_3D(2)", "sl2(1)"):
        with pytest.raises(UnknownSuite):
            parse_suite_id(bad)
    assert parse_suite_id("SL2(3)") == ("SL2", 3)
    assert parse_suite_id("POLY_ALG") == ("POLY_ALG", None)


def test_closure_zero_target():
    basis = [("H", el("H3")), ("S", el("SIGMA_DOT_L"))]
    fit = solve_closure_coefficients(Element.zero(3), basis)
    assert fit.exact
    assert all(c.is_zero() for c in fit.coefficients.values())


def test_closure_recovers_known_combination():
    h, s = el("H3"), el("SIGMA_DOT_L")
    coeff = GA * 3 + 1
    target = (h * s).scale(coeff) + h.scale(HB)
    fit = solve_closure_coefficients(target, [("H*S", h * s), ("H", h), ("S", s)])
    assert fit.exact
    assert fit.coefficient("H*S") == coeff
    assert fit.coefficient("H") == HB
    assert fit.coefficient("S").is_zero()


def test_closure_reports_leftover():
    target = el("J_1")
    fit = solve_closure_coefficients(target, [("J_2", el("J_2"))])
    assert not fit.exact
    assert fit.leftover == target


def test_closure_rejects_inhomogeneous_target():
    with pytest.raises(ValueError):
        solve_closure_coefficients(el("H3") + el("SIGMA_DOT_L"), [("S", el("SIGMA_DOT_L"))])


def test_x1_x2_fit_matches_printed_f():
    from coalspin.verifier import _ff_basis, _js

    js = _js()
    comm = commutator(el("X_1"), el("X_2"))
    fit = solve_closure_coefficients(comm, _ff_basis(3, js, el("H3"), el("SIGMA_DOT_L")))
    assert fit.exact
    expected = printed_f_coefficients(3)
    for name in set(fit.coefficients) | set(expected):
        assert fit.coefficient(name) == expected.get(name, ScalarPoly()), name


def test_fitted_g_values():
    fit = fit_g(1)
    assert fit.exact
    mi = -I_UNIT
    assert fit.coefficient("1") == mi * HB * HB * AL * AL
    assert fit.coefficient("S") == mi * HB * AL * AL
    assert fit.coefficient("H*S^3") == mi * HB * 4
    assert fit.coefficient("H*S^2") == mi * HB * HB * (GA * 6 + 9)
    assert fit.fitted == el("G_POLY")


def test_lplus_lminus_delta_is_corrected_sign():
    fit = lplus_lminus_delta_fit()
    assert fit.exact
    assert fit.coefficient("J^2") == ScalarPoly.const(1)
    assert fit.coefficient("S") == -HB


def test_report_json_schema(suite_report):
    data = json.loads(reports_to_json([suite_report("SL2(1)"), suite_report("FUND_3D")]))
    assert data["pass"] is True
    for suite in data["suites"]:
        assert set(suite) >= {"suite", "relations", "pass"}
        for rel in suite["relations"]:
            assert set(rel) >= {"id", "pass", "residual_terms", "millis"}
            assert rel["millis"] is None


def test_diagnostics_do_not_gate(suite_report):
    report = suite_report("CONSERVE_3D")
    diags = [r for r in report.relations if r.diagnostic]
    assert diags and any(not r.passed for r in diags)
    assert report.passed


def test_shape_2d_sampling_counts(suite_report):
    sampled = [r for r in suite_report("SHAPE_2D").relations if r.samples]
    assert sampled
    assert all(r.passed for r in sampled)


def test_special_gamma_census_is_reported(suite_report):
    report = suite_report("SPECIAL_GAMMA")
    assert any(k.startswith("p-degree census") for k in report.diagnostics)

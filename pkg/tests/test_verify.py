import json
from fractions import Fraction

import pytest
import sympy as sp

from sphmeas import measures, modforms, qseries, schwartz, verify


def test_self_dual_series_levels():
    f, _ = modforms.theta_pow(1, horizon=40.0)
    ft = verify.self_dual_series(f, 4)
    assert ft.surd == 1
    assert [ex.q for ex, _ in ft.terms[:3]] == [0, 1, 4]
    g = verify.self_dual_series(f, 5)
    assert g.surd == 5
    assert g.terms[1][0].value() == pytest.approx(2 / 5**0.5)


def test_measure_of_form_tags():
    f, law = modforms.theta_pow(2, horizon=60.0)
    mu = verify.measure_of_form(f, law)
    assert mu.dims == (2,)
    assert mu.eigen == 0
    f6, law6 = modforms.eisenstein6(horizon=60.0)
    mu6 = verify.measure_of_form(f6, law6)
    assert mu6.eigen == 2  # rho = -1 = i^2


def test_report_verdict_and_json_determinism():
    f, law = modforms.theta_pow(3)
    r1 = verify.check_modular_transform(f, law)
    r2 = verify.check_modular_transform(f, law)
    assert r1.verdict
    assert r1.to_json() == r2.to_json()
    doc = json.loads(r1.to_json())
    assert doc["verdict"] == "pass"
    assert len(doc["residuals"]) == 5
    assert all(r["tail_budget"] <= 1e-9 for r in doc["residuals"])


def test_report_fails_on_wrong_eigenvalue():
    f, law = modforms.theta_pow(3)
    bad_law = modforms.TransformLaw(law.weight, law.level, law.multiplier)
    rep = verify.check_modular_transform(f, bad_law)
    assert rep.verdict
    # force a wrong rho by lying about the weight
    lying = modforms.TransformLaw(Fraction(5, 2), law.level, law.multiplier)
    rep2 = verify.check_modular_transform(f, lying)
    assert not rep2.verdict


def test_empty_report_fails():
    rep = verify.Report("x", {}, 1e-8, ())
    assert not rep.verdict


def test_vacuous_probes_excluded_from_verdict():
    good = verify.Residual("a", 0j, 0j, 0.0, 0.0, vacuous=False)
    vac = verify.Residual("b", 1j, 0j, 1.0, 0.0, vacuous=True)
    rep = verify.Report("x", {}, 1e-8, (good, vac))
    assert rep.verdict
    bad = verify.Residual("c", 1j, 0j, 1.0, 0.0, vacuous=False)
    assert not verify.Report("x", {}, 1e-8, (good, bad)).verdict


def test_check_psf_radial_flags_eigenfunctions():
    f, law = modforms.theta_pow(3)
    mu = verify.measure_of_form(f, law)
    rho = modforms.transform_law_eigenvalue(law)
    rep = verify.check_psf_radial(
        mu, rho, [schwartz.RadialPolyGaussian(3, (1,), 1)]
    )
    assert rep.residuals[0].vacuous
    rep2 = verify.check_psf_radial(
        mu, rho, [schwartz.RadialPolyGaussian(3, (1,), 2)]
    )
    assert not rep2.residuals[0].vacuous
    assert rep2.verdict


def test_check_psf_even_and_odd():
    f, law = modforms.theta_pow(3)
    mu = verify.measure_of_form(f, law)
    nu, nu_hat = measures.descend_even(mu)
    phis = [schwartz.PolyGaussian((1, 0, 1), sp.Rational(3, 2))]
    assert verify.check_psf_even(nu, nu_hat, phis).verdict
    nuo, nuo_hat = measures.descend_odd(mu)
    assert verify.check_psf_odd(nuo, nuo_hat, verify._default_odd_phis()).verdict
    # mismatched transforms must fail
    assert not verify.check_psf_odd(nuo, nuo, verify._default_odd_phis()).verdict


def test_check_weil_equivariance_all_generators():
    f, law = modforms.theta_pow(1)
    mu = verify.measure_of_form(f, law)
    for gen in (("rot", Fraction(3, 2)), ("t", Fraction(2, 7)), ("S",)):
        rep = verify.check_weil_equivariance(mu, gen, tol=1e-10)
        assert rep.verdict, gen


def test_check_eigen_measure_and_line():
    f, law = modforms.theta_pow(1)
    mu = verify.measure_of_form(f, law)
    assert verify.check_eigen(mu).verdict
    assert not verify.check_eigen(mu, eps=2).verdict
    f3, law3 = modforms.theta_pow(3)
    mu3 = verify.measure_of_form(f3, law3)
    nu, _ = measures.descend_odd(mu3)
    assert nu.eigen == 3
    assert verify.check_eigen(nu).verdict
    with pytest.raises(ValueError):
        verify.check_eigen(measures.LineDistribution((), parity="odd"))

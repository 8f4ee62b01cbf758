import math
from fractions import Fraction

import pytest

from sphmeas import arith, qseries
from sphmeas.qseries import Exponent, QSeries


def test_exponent_validation():
    with pytest.raises(ValueError):
        Exponent(Fraction(-1))
    with pytest.raises(ValueError):
        Exponent(Fraction(1), 4)
    e = Exponent(Fraction(3, 2), 5)
    assert e.value() == pytest.approx(1.5 * math.sqrt(5))
    assert e.sqrt_value() == pytest.approx(math.sqrt(e.value()))


def test_series_ordering_and_certificate():
    t1 = (Exponent(Fraction(0)), 1)
    t2 = (Exponent(Fraction(2)), 6)
    with pytest.raises(ValueError):
        QSeries((t2, t1), growth=(10.0, 0.0))
    with pytest.raises(ValueError):
        QSeries((t1, t2), growth=(1.0, 0.0))  # |6| > 1 * (1+2)^0
    f = QSeries((t1, t2), growth=(2.0, 1.0))
    assert f.gap == pytest.approx(2.0)
    assert f.coefficient_at(2) == 6
    assert f.coefficient_at(4) == 0


def test_evaluate_matches_direct_sum():
    coeffs = arith.rep_numbers(3, 200)
    f = qseries.series_from_classical(coeffs, growth=(6.0, 1.5))
    v, bound = qseries.evaluate(f, 1j)
    direct = sum(c * math.exp(-2 * math.pi * m) for m, c in enumerate(coeffs))
    assert abs(v - direct) < 1e-14
    assert bound < 1e-12
    # value of the rescaled series at i equals sum r_3(m) e^{-pi m}
    ft = qseries.rescale_argument(f, Fraction(1, 2))
    v2, _ = qseries.evaluate(ft, 1j)
    # theta(i) = pi^{1/4} / Gamma(3/4), cubed
    assert v2.real == pytest.approx(1.0864348112133080**3, abs=1e-12)
    c1 = arith.rep_numbers(1, 200)
    f1 = qseries.series_from_classical(c1, growth=(2.0, 0.0))
    w, _ = qseries.evaluate(qseries.rescale_argument(f1, Fraction(1, 2)), 1j)
    assert w.real == pytest.approx(1.0864348112133080, abs=1e-12)


def test_truncation_error():
    f = qseries.series_from_classical([1, 1], growth=(1.0, 0.0), horizon=2.0)
    with pytest.raises(qseries.TruncationError) as exc:
        qseries.evaluate(f, 1j, tol=1e-12)
    assert exc.value.achieved_bound > 1e-12


def test_multiply_is_theta_square():
    c1 = arith.rep_numbers(1, 100)
    c2 = arith.rep_numbers(2, 100)
    f1 = qseries.series_from_classical(c1, growth=(2.0, 0.0))
    f2 = qseries.series_from_classical(c2, growth=(4.0, 1.0))
    prod = qseries.multiply(f1, f1)
    for ex, c in prod.terms:
        m = int(ex.q) // 2
        assert c == c2[m]
    sq = qseries.power(f1, 2)
    assert sq.terms == prod.terms


def test_rescale_argument_surds():
    f = qseries.series_from_classical([1, 2], growth=(2.0, 0.0))
    g = qseries.rescale_argument(f, Fraction(1), 5)
    assert g.surd == 5
    assert g.terms[1][0].q == Fraction(2, 5)
    assert g.terms[1][0].value() == pytest.approx(2 / math.sqrt(5))
    # rescaling by sqrt(20) = 2 sqrt(5) keeps exponents representable
    h = qseries.rescale_argument(g, Fraction(1), 5)
    assert h.surd == 1
    assert h.terms[1][0].q == Fraction(2, 5)
    with pytest.raises(ValueError):
        qseries.rescale_argument(f, Fraction(-1))


def test_eta_product_leading_exponent_and_pentagonal():
    f = qseries.eta_product({1: 1}, horizon=100.0)
    assert f.terms[0][0].q == Fraction(1, 12)
    # eta = sum (-1)^n e((6n+1)^2 tau / 24)
    expected = {}
    n = 0
    while (6 * n + 1) ** 2 <= 1200:
        expected[Fraction((6 * n + 1) ** 2, 12)] = (-1) ** n
        if n > 0:
            expected[Fraction((6 * (-n) + 1) ** 2, 12)] = (-1) ** n
        n += 1
    got = {ex.q: c for ex, c in f.terms}
    for q, c in got.items():
        assert expected.get(q) == c


def test_eta_product_negative_exponents():
    # eta(2 tau)^48 / eta(tau)^24 times eta(tau)^24 = eta(2 tau)^48
    f = qseries.eta_product({1: -24, 2: 48}, horizon=60.0)
    g = qseries.eta_product({1: 24}, horizon=60.0)
    h = qseries.eta_product({2: 48}, horizon=60.0)
    prod = qseries.multiply(f, g)
    got = {ex.q: c for ex, c in prod.terms}
    for ex, c in h.terms:
        if ex.value() <= prod.horizon - 2:
            assert got.get(ex.q, 0) == c
    # a pure negative product would have a negative leading exponent
    with pytest.raises(ValueError):
        qseries.eta_product({1: -24}, horizon=60.0)


def test_csv_round_trip(tmp_path):
    f = qseries.eta_product({1: 2, 2: 1}, horizon=40.0)
    path = tmp_path / "out.csv"
    qseries.to_csv(f, str(path))
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "exponent_num,exponent_den,surd,coeff_re,coeff_im"
    first = lines[1].split(",")
    assert Fraction(int(first[0]), int(first[1])) == f.terms[0][0].q
    assert Fraction(first[3]) == f.terms[0][1]

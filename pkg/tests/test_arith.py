import cmath
import math
from fractions import Fraction

import pytest

from sphmeas import arith, qseries


def brute_rep_numbers(k, limit):
    r = math.isqrt(limit)
    out = [0] * (limit + 1)

    def rec(dim, total):
        if dim == 0:
            if total <= limit:
                out[total] += 1
            return
        for n in range(-r, r + 1):
            s = total + n * n
            if s <= limit:
                rec(dim - 1, s)

    rec(k, 0)
    return out


def test_rep_numbers_small_table():
    r3 = arith.rep_numbers(3, 5)
    assert r3 == [1, 6, 12, 8, 6, 24]
    r2 = arith.rep_numbers(2, 5)
    assert r2 == [1, 4, 4, 0, 4, 8]


def test_rep_numbers_match_enumeration():
    for k in (1, 2, 3):
        assert arith.rep_numbers(k, 30) == brute_rep_numbers(k, 30)


def test_divisor_sigma():
    assert arith.divisor_sigma(1, 6) == 12
    assert arith.divisor_sigma(0, 12) == 6
    assert arith.divisor_sigma(5, 2) == 33
    with pytest.raises(ValueError):
        arith.divisor_sigma(1, 0)


def test_kronecker_symbol_values():
    # quadratic residues mod 5: 1, 4
    assert [arith.kronecker_symbol(m, 5) for m in range(5)] == [0, 1, -1, -1, 1]
    # the 2 and -1 conventions
    assert arith.kronecker_symbol(7, 2) == 1
    assert arith.kronecker_symbol(3, 2) == -1
    assert arith.kronecker_symbol(-3, -1) == -1
    assert arith.kronecker_symbol(3, -1) == 1
    assert arith.kronecker_symbol(1, 0) == 1
    assert arith.kronecker_symbol(5, 0) == 0
    # multiplicativity in the top argument for odd prime bottom
    for p in (3, 7, 11):
        for a in range(1, 10):
            for b in range(1, 10):
                assert arith.kronecker_symbol(
                    a * b, p
                ) == arith.kronecker_symbol(a, p) * arith.kronecker_symbol(b, p)


def test_dedekind_sum_values():
    assert arith.dedekind_sum(1, 3) == Fraction(1, 18)
    assert arith.dedekind_sum(1, 2) == 0
    # reciprocity: s(d,c) + s(c,d) = -1/4 + (c/d + d/c + 1/(cd)) / 12
    for c, d in ((5, 3), (7, 4), (9, 2)):
        lhs = arith.dedekind_sum(d, c) + arith.dedekind_sum(c, d)
        rhs = Fraction(-1, 4) + (
            Fraction(c, d) + Fraction(d, c) + Fraction(1, c * d)
        ) / 12
        assert lhs == rhs


def test_matrix_det_check():
    with pytest.raises(ValueError):
        arith.IntegerMatrix2(1, 1, 1, 1)
    m = arith.IntegerMatrix2(1, 1, 0, 1)
    assert (m @ m).b == 2


def _series_value(f, tau):
    # Moebius images can have small imaginary part, so allow a larger
    # (still certified) tail bound than the default
    v, _ = qseries.evaluate(f, tau, tol=1e-7)
    return v


def test_theta_multiplier_against_theta_series():
    from sphmeas import modforms

    f, _ = modforms.theta_pow(1)
    # matrices in the level 4 group with c > 0
    mats = [
        arith.IntegerMatrix2(1, 0, 4, 1),
        arith.IntegerMatrix2(3, 1, 8, 3),
        arith.IntegerMatrix2(5, 1, 24, 5),
    ]
    for M in mats:
        # on the isometric circle |c tau + d| = 1 the image keeps a
        # usable imaginary part, so tails stay certified
        tau = (-M.d + 1j) / M.c
        lhs = _series_value(f, M.act(tau))
        v = arith.theta_multiplier_value(M)
        rhs = v * cmath.sqrt(M.automorphy(tau)) * _series_value(f, tau)
        assert abs(lhs - rhs) < 1e-7


def test_eta_multiplier_against_eta_series():
    f = qseries.eta_product({1: 1})
    mats = [
        arith.IntegerMatrix2(0, -1, 1, 0),
        arith.IntegerMatrix2(1, 0, 1, 1),
        arith.IntegerMatrix2(2, 1, 3, 2),
        arith.IntegerMatrix2(1, 3, 0, 1),
    ]
    for M in mats:
        tau = 0.15 + 1.1j
        lhs = _series_value(f, M.act(tau))
        v = arith.eta_multiplier_value(M)
        rhs = v * cmath.sqrt(M.automorphy(tau)) * _series_value(f, tau)
        assert abs(lhs - rhs) < 1e-7


def test_evaluate_multiplier_domains():
    v = arith.theta_power(2)
    with pytest.raises(ValueError):
        arith.evaluate_multiplier(v, arith.IntegerMatrix2(1, 0, 1, 1))
    assert arith.evaluate_multiplier(
        v, arith.IntegerMatrix2(1, 0, 4, 1)
    ) == pytest.approx(arith.theta_multiplier_value(arith.IntegerMatrix2(1, 0, 4, 1)) ** 2)
    assert arith.evaluate_multiplier(arith.trivial_multiplier(), arith.IntegerMatrix2(1, 1, 0, 1)) == 1


def test_fricke_values():
    assert arith.fricke_value(arith.theta_power(1)) == pytest.approx(
        cmath.exp(-1j * math.pi / 4)
    )
    assert arith.fricke_value(arith.trivial_multiplier(6)) == 1
    with pytest.raises(ValueError):
        arith.fricke_value(arith.eta_multiplier())


def test_dim_theta_space():
    assert arith.dim_theta_space(Fraction(1, 2)) == 1
    assert arith.dim_theta_space(Fraction(3, 2)) == 1
    assert arith.dim_theta_space(Fraction(9, 2)) == 3
    assert arith.dim_theta_space(Fraction(-1, 2)) == 0
    with pytest.raises(ValueError):
        arith.dim_theta_space(Fraction(2))

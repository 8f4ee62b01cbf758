import cmath
import math

import pytest
import sympy as sp

from sphmeas import schwartz
from sphmeas.schwartz import PolyGaussian, RadialPolyGaussian


def numeric_fourier(phi, y, half_width=8.0, n=4000):
    h = 2 * half_width / n
    total = 0j
    for i in range(n + 1):
        x = -half_width + i * h
        w = 1.0 if 0 < i < n else 0.5
        total += w * phi.evaluate(x) * cmath.exp(-2j * cmath.pi * x * y)
    return total * h


def test_gaussian_self_dual():
    phi = PolyGaussian((1,), 1)
    assert schwartz.is_fourier_eigenfunction(phi) == 1
    odd = PolyGaussian((0, 1), 1)
    assert schwartz.is_fourier_eigenfunction(odd) == -sp.I


def test_fourier_against_quadrature():
    phi = PolyGaussian((1, 2, 0, 1), sp.Rational(3, 2))
    hat = schwartz.fourier(phi)
    for y in (0.0, 0.3, 1.1, -0.7):
        assert abs(hat.evaluate(y) - numeric_fourier(phi, y)) < 1e-9


def test_fourier_double_is_reflection():
    phi = PolyGaussian((1, 1, 2), sp.Rational(5, 4))
    twice = schwartz.fourier(schwartz.fourier(phi))
    for x in (0.0, 0.4, 1.3):
        assert abs(twice.evaluate(x) - phi.evaluate(-x)) < 1e-12


def test_derivative_matches_finite_difference():
    phi = PolyGaussian((1, 0, 2), 1)
    d = schwartz.derivative(phi, 1)
    h = 1e-6
    for x in (0.0, 0.5, 1.5):
        fd = (phi.evaluate(x + h) - phi.evaluate(x - h)) / (2 * h)
        assert abs(d.evaluate(x) - fd) < 1e-6
    fam = schwartz.derivative_family(phi, 3)
    assert len(fam) == 4
    assert fam[0] is phi


def test_radial_fourier_dimension_one_matches_line():
    phi_u = RadialPolyGaussian(1, (1, 2), sp.Rational(3, 2))
    phi_x = PolyGaussian((1, 0, 2), sp.Rational(3, 2))
    hat_u = schwartz.fourier_radial(phi_u)
    hat_x = schwartz.fourier(phi_x)
    for r in (0.0, 0.7, 1.4):
        assert abs(hat_u.evaluate_radius(r) - hat_x.evaluate(r)) < 1e-12


def test_radial_fourier_involution():
    phi = RadialPolyGaussian(3, (1, 1), sp.Rational(4, 5))
    twice = schwartz.fourier_radial(schwartz.fourier_radial(phi))
    for r in (0.0, 0.6, 1.2):
        assert abs(twice.evaluate_radius(r) - phi.evaluate_radius(r)) < 1e-12


def test_radial_fourier_gaussian_complex_parameter():
    # regression: fractional powers of inexact complex parameters must
    # use the principal branch
    tau = -0.25 + 0.8j
    g = schwartz.gaussian_from_tau(tau, 3)
    hat = schwartz.fourier_radial(g)
    a = -1j * tau
    assert complex(hat.poly_u[0]) == pytest.approx(a ** (-1.5))
    assert complex(hat.a) == pytest.approx(1 / a)


def test_parity_helpers():
    phi = PolyGaussian((1, 2, 3), 1)
    assert schwartz.parity_of(phi) == "mixed"
    even = schwartz.parity_project(phi, "even")
    assert schwartz.parity_of(even) == "even"
    odd = schwartz.parity_project(phi, "odd")
    assert schwartz.parity_of(odd) == "odd"
    with pytest.raises(ValueError):
        schwartz.parity_project(PolyGaussian((1,), 1), "odd")
    with pytest.raises(ValueError):
        schwartz.parity_project(phi, "both")


def test_gaussian_from_tau():
    g = schwartz.gaussian_from_tau(2j, 5)
    assert g.k == 5
    assert complex(g.a) == pytest.approx(2.0)
    # g(x, tau) = e(|x|^2 tau / 2)
    assert g.evaluate_radius(1.0) == pytest.approx(math.exp(-2 * math.pi))
    with pytest.raises(ValueError):
        schwartz.gaussian_from_tau(1.0, 3)


def test_parameter_validation():
    with pytest.raises(ValueError):
        PolyGaussian((1,), -1)
    with pytest.raises(ValueError):
        PolyGaussian((0,), 1)
    with pytest.raises(ValueError):
        RadialPolyGaussian(0, (1,), 1)

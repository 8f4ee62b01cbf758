"""Closed-form Schwartz test functions.

Two families, both closed under differentiation and Fourier transform:

* PolyGaussian: x -> p(x) exp(-pi a x^2) on the real line,
* RadialPolyGaussian: x -> P(|x|^2) exp(-pi a |x|^2) on R^k.

Coefficients and the Gaussian parameter are sympy scalars so transforms
and derivatives are exact; numeric evaluation converts once to complex
and is then cheap.  The Fourier convention is
phihat(y) = integral phi(x) e(-x.y) dx with e(y) = exp(2 pi i y), under
which exp(-pi a x^2) maps to a^{-1/2} exp(-pi y^2 / a).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import sympy as sp

_TWO_PI = 2 * sp.pi


def _as_expr(v):
    if isinstance(v, complex):
        return sp.Float(v.real, 17) + sp.I * sp.Float(v.imag, 17)
    return sp.sympify(v)


def _simplify_coeff(e):
    # radsimp mis-evaluates fractional powers of inexact complex numbers
    # (it rationalizes through a wrong branch), so floating expressions
    # are collapsed numerically instead
    e = sp.sympify(e)
    if not e.free_symbols and e.atoms(sp.Float):
        return _as_expr(complex(e))
    return sp.expand(sp.radsimp(e))


def _trim(coeffs: list) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class PolyGaussian:
    """p(x) exp(-pi a x^2) with polynomial coefficients poly[j] on x^j."""

    poly: tuple
    a: object

    def __post_init__(self):
        object.__setattr__(self, "poly", _trim([_as_expr(c) for c in self.poly]))
        object.__setattr__(self, "a", _as_expr(self.a))
        if not self.poly:
            raise ValueError("polynomial part must be nonzero")
        if complex(self.a).real <= 0:
            raise ValueError("Gaussian parameter needs Re a > 0")

    def _numeric(self):
        return [complex(c) for c in self.poly], complex(self.a)

    def evaluate(self, x: float) -> complex:
        cs, a = self._numeric()
        px = 0j
        for c in reversed(cs):
            px = px * x + c
        return px * cmath.exp(-cmath.pi * a * x * x)

    def degree(self) -> int:
        return len(self.poly) - 1


@dataclass(frozen=True)
class RadialPolyGaussian:
    """P(u) exp(-pi a u) with u = |x|^2, as a radial function on R^k."""

    k: int
    poly_u: tuple
    a: object

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "poly_u", _trim([_as_expr(c) for c in self.poly_u]))
        object.__setattr__(self, "a", _as_expr(self.a))
        if not self.poly_u:
            raise ValueError("polynomial part must be nonzero")
        if complex(self.a).real <= 0:
            raise ValueError("Gaussian parameter needs Re a > 0")

    def _numeric(self):
        return [complex(c) for c in self.poly_u], complex(self.a)

    def evaluate_radius(self, r: float) -> complex:
        cs, a = self._numeric()
        u = r * r
        pu = 0j
        for c in reversed(cs):
            pu = pu * u + c
        return pu * cmath.exp(-cmath.pi * a * u)

    def degree(self) -> int:
        return len(self.poly_u) - 1


def derivative(phi: PolyGaussian, j: int = 1) -> PolyGaussian:
    """Exact j-th derivative, staying in the PolyGaussian algebra."""
    if j < 0:
        raise ValueError("derivative order must be nonnegative")
    coeffs = list(phi.poly)
    for _ in range(j):
        coeffs = _derive_once(coeffs, phi.a)
    return PolyGaussian(tuple(coeffs), phi.a)


def _derive_once(coeffs: list, a) -> list:
    n = len(coeffs)
    out = [sp.Integer(0)] * (n + 1)
    for jj in range(n + 1):
        term = sp.Integer(0)
        if jj + 1 < n:
            term += (jj + 1) * coeffs[jj + 1]
        if jj >= 1:
            term -= _TWO_PI * a * coeffs[jj - 1]
        out[jj] = sp.expand(term)
    return out


def derivative_family(phi: PolyGaussian, top: int) -> list:
    """[phi, phi', ..., phi^(top)] computed once for repeated pairing."""
    fam = [phi]
    for _ in range(top):
        fam.append(derivative(fam[-1], 1))
    return fam


def _lower_once(coeffs: list, b) -> list:
    # apply L = (i / 2 pi) d/dy to q(y) exp(-pi b y^2), returning new q
    n = len(coeffs)
    out = [sp.Integer(0)] * (n + 1)
    for jj in range(n + 1):
        term = sp.Integer(0)
        if jj + 1 < n:
            term += sp.I * (jj + 1) * coeffs[jj + 1] / _TWO_PI
        if jj >= 1:
            term -= sp.I * b * coeffs[jj - 1]
        out[jj] = sp.expand(term)
    return out


def fourier(phi: PolyGaussian) -> PolyGaussian:
    """Exact Fourier transform within the algebra.

    Uses hat(x phi) = (i / 2 pi) (hat phi)' applied once per power of x,
    starting from the Gaussian image a^{-1/2} exp(-pi y^2 / a).
    """
    a = phi.a
    b = 1 / a
    base = [1 / sp.sqrt(a)]
    images = [base]
    for _ in range(phi.degree()):
        images.append(_lower_once(images[-1], b))
    deg_out = len(images[-1]) - 1
    out = [sp.Integer(0)] * (deg_out + 1)
    for n, c in enumerate(phi.poly):
        if c == 0:
            continue
        img = images[n]
        for jj, q in enumerate(img):
            out[jj] = out[jj] + c * q
    out = [_simplify_coeff(e) for e in out]
    if not any(e != 0 for e in out):
        out = [out[0]]
    return PolyGaussian(_trim(out) or (0,), b)


def _radial_lower_once(coeffs: list, b, k: int) -> list:
    # multiplication by u on the Fourier side: -(1/4 pi^2) Laplacian,
    # with Laplacian(F(u)) = 4 u F'' + 2 k F' for radial F on R^k
    n = len(coeffs)
    # F = P e^{-pi b u}: F' = (P' - pi b P) e, F'' = (P'' - 2 pi b P' + pi^2 b^2 P) e
    def shift(poly, s):
        return [sp.Integer(0)] * s + list(poly)

    def dpoly(poly):
        return [sp.expand((i + 1) * poly[i + 1]) for i in range(len(poly) - 1)] or [sp.Integer(0)]

    P = list(coeffs)
    P1 = dpoly(P)
    P2 = dpoly(P1)
    def add(*polys):
        m = max(len(p) for p in polys)
        out = [sp.Integer(0)] * m
        for p in polys:
            for i, c in enumerate(p):
                out[i] = out[i] + c
        return out

    def scale(poly, s):
        return [sp.expand(s * c) for c in poly]

    Fp = add(P1, scale(P, -sp.pi * b))
    Fpp = add(P2, scale(P1, -2 * sp.pi * b), scale(P, sp.pi**2 * b**2))
    lap = add(shift(scale(Fpp, 4), 1), scale(Fp, 2 * k))
    return [sp.expand(-c / (4 * sp.pi**2)) for c in lap]


def fourier_radial(phi: RadialPolyGaussian) -> RadialPolyGaussian:
    """k-dimensional Fourier transform of a radial function, exact."""
    a = phi.a
    b = 1 / a
    k = phi.k
    base = [sp.sqrt(a) ** (-k)]
    images = [base]
    for _ in range(phi.degree()):
        images.append(_radial_lower_once(images[-1], b, k))
    deg_out = max(len(img) for img in images) - 1
    out = [sp.Integer(0)] * (deg_out + 1)
    for n, c in enumerate(phi.poly_u):
        if c == 0:
            continue
        for jj, q in enumerate(images[n]):
            out[jj] = out[jj] + c * q
    out = [_simplify_coeff(e) for e in out]
    return RadialPolyGaussian(k, _trim(out) or (0,), b)


def parity_project(phi: PolyGaussian, parity: str) -> PolyGaussian:
    """Keep only even or odd powers of x; signals an identically zero result."""
    if parity not in ("even", "odd"):
        raise ValueError("parity must be 'even' or 'odd'")
    keep = 0 if parity == "even" else 1
    coeffs = [c if j % 2 == keep else sp.Integer(0) for j, c in enumerate(phi.poly)]
    if not any(c != 0 for c in coeffs):
        raise ValueError("projection is identically zero")
    return PolyGaussian(tuple(coeffs), phi.a)


def parity_of(phi: PolyGaussian) -> str:
    """'even', 'odd', or 'mixed' according to the monomials present."""
    has_even = any(c != 0 for j, c in enumerate(phi.poly) if j % 2 == 0)
    has_odd = any(c != 0 for j, c in enumerate(phi.poly) if j % 2 == 1)
    if has_even and has_odd:
        return "mixed"
    return "odd" if has_odd else "even"


def gaussian_from_tau(tau: complex, k: int = 1) -> RadialPolyGaussian:
    """The Gaussian g(x, tau) = e(x.x tau / 2) on R^k, i.e. a = -i tau."""
    if complex(tau).imag <= 0:
        raise ValueError("needs Im(tau) > 0")
    return RadialPolyGaussian(k, (1,), _as_expr(-sp.I * _as_expr(tau)))


def scalar_multiple(phi: PolyGaussian, psi: PolyGaussian):
    """If psi = c * phi exactly in the algebra, return c, else None."""
    if sp.simplify(phi.a - psi.a) != 0:
        return None
    if len(phi.poly) != len(psi.poly):
        return None
    ratio = None
    for cp, cq in zip(phi.poly, psi.poly):
        zp = cp != 0
        zq = cq != 0
        if zp != zq:
            return None
        if not zp:
            continue
        r = sp.simplify(cq / cp)
        if ratio is None:
            ratio = r
        elif sp.simplify(r - ratio) != 0:
            return None
    return ratio


def is_fourier_eigenfunction(phi: PolyGaussian):
    """Return the eigenvalue if hat(phi) = c phi exactly, else None."""
    return scalar_multiple(phi, fourier(phi))

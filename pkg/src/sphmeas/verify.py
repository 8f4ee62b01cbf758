"""Numerical certification of the summation and transformation identities.

Every check returns a Report listing, for each probe (a grid point or a
test function), the two sides of the identity, the absolute residual,
and the certified truncation budget spent computing them.  A report
passes when every residual is at most the tolerance and every budget is
at most a tenth of it, so a pass is meaningful: the truncated sums are
provably within tol/10 of the infinite ones.

Checks that hold for trivial reasons (for instance a test function that
is an exact Fourier eigenfunction, which makes a Poisson identity
degenerate) are flagged vacuous rather than silently counted.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from . import measures, modforms, qseries, schwartz

DEFAULT_GRID = (0.5j, 1j, 2j, 0.3 + 1.1j, -0.25 + 0.8j)


@dataclass(frozen=True)
class Residual:
    """One probe of an identity: both sides, their distance, the budget."""

    probe: str
    lhs: complex
    rhs: complex
    diff: float
    tail_budget: float
    vacuous: bool = False


@dataclass(frozen=True)
class Report:
    """Outcome of one identity check over a family of probes."""

    identity_name: str
    parameters: dict
    tol: float
    residuals: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "residuals", tuple(self.residuals))

    @property
    def verdict(self) -> bool:
        if not self.residuals:
            return False
        return all(
            r.diff <= self.tol and r.tail_budget <= self.tol / 10.0
            for r in self.residuals
            if not r.vacuous
        )

    def max_residual(self) -> float:
        return max((r.diff for r in self.residuals), default=math.inf)

    def to_json(self) -> str:
        doc = {
            "identity": self.identity_name,
            "parameters": {k: repr(v) for k, v in sorted(self.parameters.items())},
            "tol": self.tol,
            "verdict": "pass" if self.verdict else "fail",
            "residuals": [
                {
                    "probe": r.probe,
                    "lhs": [r.lhs.real, r.lhs.imag],
                    "rhs": [r.rhs.real, r.rhs.imag],
                    "diff": r.diff,
                    "tail_budget": r.tail_budget,
                    "vacuous": r.vacuous,
                }
                for r in self.residuals
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def summary(self) -> str:
        return "%s: %s (max residual %.3g, tol %.3g, %d probes)" % (
            self.identity_name,
            "pass" if self.verdict else "FAIL",
            self.max_residual(),
            self.tol,
            len(self.residuals),
        )


def self_dual_series(f: qseries.QSeries, level: int) -> qseries.QSeries:
    """The rescaled series tau -> f(tau / sqrt(level)), exponents exact."""
    s = 1
    d = level
    i = 2
    while i * i <= d:
        while d % (i * i) == 0:
            d //= i * i
            s *= i
        i += 1
    return qseries.rescale_argument(f, Fraction(1, s), d)


def measure_of_form(
    f: qseries.QSeries, law: modforms.TransformLaw
) -> measures.SphericalMeasure:
    """The spherical measure whose theta function is f(tau / sqrt(level)).

    The measure lives on R^{2w}; its Fourier transform is rho times
    itself with rho the normalized Fricke eigenvalue, recorded as an
    eigen tag when rho is a power of i and as an explicit Fourier side
    otherwise.
    """
    two_w = 2 * law.weight
    if two_w.denominator != 1:
        raise ValueError("weight must be a multiple of 1/2")
    k = int(two_w)
    ft = self_dual_series(f, law.level)
    rho = modforms.transform_law_eigenvalue(law)
    for eps in range(4):
        if abs(1j**eps - rho) < 1e-12:
            return measures.measure_from_series(ft, k, eigen=eps)
    fside = qseries.QSeries(
        tuple((ex, rho * c) for ex, c in ft.terms),
        surd=ft.surd,
        growth=ft.growth,
        horizon=ft.horizon,
        gap=ft.gap,
    )
    return measures.measure_from_series(ft, k, fourier_series=fside)


def _fmt_tau(tau: complex) -> str:
    return "tau=%g%+gi" % (tau.real, tau.imag)


def check_modular_transform(
    f: qseries.QSeries,
    law: modforms.TransformLaw,
    grid=DEFAULT_GRID,
    tol: float = 1e-8,
) -> Report:
    """Certify f(-1/(N tau)) = rho_0 (sqrt(N) tau)^w f(tau) on a grid.

    Equivalently, with ft(tau) = f(tau / sqrt(N)) and rho the normalized
    Fricke eigenvalue, the residual probed at each grid point is

        ft(-1/tau) - rho * sqrt(-i tau)^{2w} * ft(tau).
    """
    N = law.level
    ft = self_dual_series(f, N)
    rho = modforms.transform_law_eigenvalue(law)
    two_w = 2 * law.weight
    if two_w.denominator != 1:
        raise ValueError("weight must be a multiple of 1/2")
    kk = int(two_w)
    residuals = []
    for tau in grid:
        lhs, b1 = qseries.evaluate(ft, -1 / tau, tol / 20.0)
        base, b2 = qseries.evaluate(ft, tau, tol / 20.0)
        rhs = rho * cmath.sqrt(-1j * tau) ** kk * base
        residuals.append(
            Residual(_fmt_tau(tau), lhs, rhs, abs(lhs - rhs), b1 + b2)
        )
    return Report(
        "modular_transform",
        {"weight": law.weight, "level": N, "rho": rho},
        tol,
        residuals,
    )


def _scalar_multiple_poly(poly1, a1, poly2, a2):
    """c with (poly2, a2) = c * (poly1, a1) exactly, else None."""
    if sp.simplify(sp.sympify(a1) - sp.sympify(a2)) != 0:
        return None
    if len(poly1) != len(poly2):
        return None
    ratio = None
    for c1, c2 in zip(poly1, poly2):
        z1, z2 = c1 != 0, c2 != 0
        if z1 != z2:
            return None
        if not z1:
            continue
        r = sp.simplify(sp.sympify(c2) / sp.sympify(c1))
        if ratio is None:
            ratio = r
        elif sp.simplify(r - ratio) != 0:
            return None
    return ratio


def _phi_label(phi) -> str:
    if isinstance(phi, schwartz.RadialPolyGaussian):
        return "rpg:k=%d,a=%s,polyU=%s" % (
            phi.k,
            phi.a,
            ",".join(str(c) for c in phi.poly_u),
        )
    return "pg:a=%s,poly=%s" % (phi.a, ",".join(str(c) for c in phi.poly))


def check_psf_radial(
    mu: measures.SphericalMeasure,
    rho: complex,
    phis,
    tol: float = 1e-8,
) -> Report:
    """Certify <mu, phihat> = rho <mu, phi> for radial test functions."""
    residuals = []
    for phi in phis:
        if isinstance(phi, schwartz.PolyGaussian):
            phi = schwartz.RadialPolyGaussian(1, tuple(phi.poly[::2]), phi.a)
        phi_hat = schwartz.fourier_radial(phi)
        c = _scalar_multiple_poly(phi.poly_u, phi.a, phi_hat.poly_u, phi_hat.a)
        vacuous = c is not None
        lhs, b1 = measures.pair(mu, phi_hat, tol / 20.0)
        base, b2 = measures.pair(mu, phi, tol / 20.0)
        rhs = complex(rho) * base
        residuals.append(
            Residual(_phi_label(phi), lhs, rhs, abs(lhs - rhs), b1 + b2, vacuous)
        )
    return Report(
        "psf_radial",
        {"dims": mu.dims, "rho": complex(rho)},
        tol,
        residuals,
    )


def check_psf_even(
    nu: measures.LineDistribution,
    nu_hat: measures.LineDistribution,
    phis,
    tol: float = 1e-8,
) -> Report:
    """Certify <nu, phi> = <nu_hat, phihat> for even test functions."""
    residuals = []
    for phi in phis:
        phi = schwartz.parity_project(phi, "even")
        phi_hat = schwartz.fourier(phi)
        c = schwartz.scalar_multiple(phi, phi_hat)
        lhs, b1 = measures.pair(nu, phi, tol / 20.0)
        rhs, b2 = measures.pair(nu_hat, phi_hat, tol / 20.0)
        residuals.append(
            Residual(
                _phi_label(phi), lhs, rhs, abs(lhs - rhs), b1 + b2, c is not None
            )
        )
    return Report("psf_even", {}, tol, residuals)


def check_psf_odd(
    nu: measures.LineDistribution,
    nu_hat: measures.LineDistribution,
    phis,
    tol: float = 1e-8,
) -> Report:
    """Certify <nu, phi> = -<nu_hat, phihat> for odd test functions.

    The sign reflects that nu_hat is the distributional transform under
    the adjunction <nu_hat, phi> = <nu, phihat> and the transform squares
    to -1 on odd functions.
    """
    residuals = []
    for phi in phis:
        phi = schwartz.parity_project(phi, "odd")
        phi_hat = schwartz.fourier(phi)
        c = schwartz.scalar_multiple(phi, phi_hat)
        lhs, b1 = measures.pair(nu, phi, tol / 20.0)
        val, b2 = measures.pair(nu_hat, phi_hat, tol / 20.0)
        rhs = -val
        residuals.append(
            Residual(
                _phi_label(phi), lhs, rhs, abs(lhs - rhs), b1 + b2, c is not None
            )
        )
    return Report("psf_odd", {}, tol, residuals)


def check_weil_equivariance(
    mu: measures.SphericalMeasure,
    gen,
    grid=DEFAULT_GRID,
    tol: float = 1e-8,
) -> Report:
    """Certify that theta intertwines the generator action with slashing.

    theta of the transformed measure is compared against the weight-k/2
    slash of theta_mu: rot(a) against a^{k/2} theta(a^2 tau), t(b)
    against theta(tau + b), and S against (sqrt tau)^{-k} theta(-1/tau).
    """
    k = mu.dims[0]
    moved = measures.weil_generator_action(mu, gen)
    residuals = []
    for tau in grid:
        lhs, b1 = measures.theta_of_measure(moved, tau, tol / 20.0)
        if gen[0] == "rot":
            a = float(gen[1])
            base, b2 = measures.theta_of_measure(mu, a * a * tau, tol / 20.0)
            rhs = a ** (k / 2.0) * base
        elif gen[0] == "t":
            base, b2 = measures.theta_of_measure(mu, tau + gen[1], tol / 20.0)
            rhs = base
        elif gen[0] == "S":
            base, b2 = measures.theta_of_measure(mu, -1 / tau, tol / 20.0)
            rhs = cmath.sqrt(tau) ** (-k) * base
        else:
            raise ValueError("unknown generator %r" % (gen[0],))
        residuals.append(
            Residual(_fmt_tau(tau), lhs, rhs, abs(lhs - rhs), b1 + b2)
        )
    return Report(
        "weil_equivariance", {"generator": gen, "dims": mu.dims}, tol, residuals
    )


def _default_odd_phis():
    return [
        schwartz.PolyGaussian((0, 1), 1),
        schwartz.PolyGaussian((0, 1, 0, 1), sp.Rational(3, 2)),
        schwartz.PolyGaussian((0, 2, 0, 0, 0, 1), sp.Rational(3, 4)),
    ]


def check_eigen(obj, eps: int | None = None, probes=None, tol: float = 1e-8) -> Report:
    """Certify <obj, phihat> = i^eps <obj, phi>.

    For a spherical measure the probes are Gaussians g(., tau) over the
    default tau grid; for an odd line distribution they are odd
    polynomial Gaussians.  eps defaults to the object's declared tag.
    """
    if eps is None:
        eps = obj.eigen
    if eps is None:
        raise ValueError("no eigen tag declared and none supplied")
    phase = 1j**eps
    residuals = []
    if isinstance(obj, measures.SphericalMeasure):
        k = obj.dims[0]
        grid = probes if probes is not None else DEFAULT_GRID
        for tau in grid:
            g = schwartz.gaussian_from_tau(tau, k)
            g_hat = schwartz.fourier_radial(g)
            lhs, b1 = measures.pair(obj, g_hat, tol / 20.0)
            base, b2 = measures.pair(obj, g, tol / 20.0)
            rhs = phase * base
            residuals.append(
                Residual(_fmt_tau(tau), lhs, rhs, abs(lhs - rhs), b1 + b2)
            )
    else:
        phis = probes if probes is not None else _default_odd_phis()
        for phi in phis:
            if obj.parity in ("even", "odd"):
                phi = schwartz.parity_project(phi, obj.parity)
            phi_hat = schwartz.fourier(phi)
            lhs, b1 = measures.pair(obj, phi_hat, tol / 20.0)
            base, b2 = measures.pair(obj, phi, tol / 20.0)
            rhs = phase * base
            residuals.append(
                Residual(_phi_label(phi), lhs, rhs, abs(lhs - rhs), b1 + b2)
            )
    return Report("fourier_eigen", {"eps": eps}, tol, residuals)

"""Constructors for the concrete modular forms used by the harness.

Each constructor returns a (QSeries, TransformLaw) pair.  The law packs
weight, level, multiplier system, and enough data to compute the Fricke
eigenvalue rho = v(W_N) / v_theta^k(W_4), which is also the Fourier
eigenvalue of the associated spherical measure.  Eigenvalues are always
computed from multiplier data, never hardcoded.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import arith, qseries


@dataclass(frozen=True)
class TransformLaw:
    """Weight, level, multiplier and Fricke data of a modular form."""

    weight: Fraction
    level: int
    multiplier: arith.MultiplierSystem
    eta_exponents: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "weight", Fraction(self.weight))


def _snap_phase(z: complex, tol: float = 1e-9) -> complex:
    """Snap a unit complex number to the nearest eighth root of unity."""
    if abs(abs(z) - 1.0) > tol:
        raise ValueError("eigenvalue is not unit modulus: %r" % (z,))
    best = min(
        (cmath.exp(1j * math.pi * n / 4.0) for n in range(8)),
        key=lambda w: abs(w - z),
    )
    if abs(best - z) > tol:
        return z
    exact = {
        0: 1,
        1: complex((1 + 1j) / math.sqrt(2)),
        2: 1j,
        3: complex((-1 + 1j) / math.sqrt(2)),
        4: -1,
        5: complex((-1 - 1j) / math.sqrt(2)),
        6: -1j,
        7: complex((1 - 1j) / math.sqrt(2)),
    }
    n = min(range(8), key=lambda n: abs(cmath.exp(1j * math.pi * n / 4.0) - z))
    return exact[n]


def transform_law_eigenvalue(law: TransformLaw) -> complex:
    """The Fricke eigenvalue v(W_N) / v_theta^k(W_4) with k = 2 * weight.

    For eta products prod eta(d tau)^{r_d} with d <-> N/d symmetric
    exponents the Fricke value follows from the eta inversion identity,
    giving rho = prod (N/d)^{r_d / 2} * N^{-K/4} with K = sum r_d.
    """
    k = 2 * law.weight
    v_theta_k = cmath.exp(-1j * math.pi * float(k) / 4.0)
    mult = law.multiplier
    if mult.kind == "eta":
        if law.eta_exponents is None:
            raise ValueError("eta law needs the exponent table")
        N = law.level
        exps = dict(law.eta_exponents)
        for d, r in exps.items():
            if N % d != 0 or exps.get(N // d) != r:
                raise ValueError("eta exponents must be N/d symmetric")
        K = sum(exps.values())
        v_w = 1.0
        for d, r in exps.items():
            v_w *= (N / d) ** (r / 2.0)
        v_w *= N ** (-K / 4.0)
        return _snap_phase(complex(v_w))
    v_w = arith.fricke_value(mult)
    if mult.kind == "trivial":
        # integral weight with trivial multiplier: the natural law is
        # f(-1/(N tau)) = (sqrt(N) tau)^w f(tau), so rho = 1/(-i)^w
        return _snap_phase(1.0 / (-1j) ** int(law.weight))
    if mult.kind == "theta_power":
        return _snap_phase(v_w / v_theta_k)
    # dirichlet_extension: integral weight w, automorphy (sqrt(N) tau)^w
    return _snap_phase(v_w / (-1j) ** int(law.weight))


def theta_pow(k: int, horizon: float = 400.0) -> tuple[qseries.QSeries, TransformLaw]:
    """theta^k = sum r_k(m) e(m tau): weight k/2, level 4, theta multiplier."""
    if k < 1:
        raise ValueError("theta_pow needs k >= 1")
    limit = math.floor(horizon / 2)
    coeffs = arith.rep_numbers(k, limit)
    # r_k(m) <= (2 sqrt(m) + 1)^k <= 3^{k/2} (1 + 2m)^{k/2}
    growth = (3.0 ** (k / 2.0), k / 2.0)
    f = qseries.series_from_classical(coeffs, growth=growth, horizon=horizon)
    law = TransformLaw(Fraction(k, 2), 4, arith.theta_power(k))
    return f, law


def _euler_pentagonal(limit: int) -> list:
    """prod_{m>=1} (1 - x^m) by the pentagonal number expansion."""
    out = [0] * (limit + 1)
    out[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > limit and g2 > limit:
            break
        s = -1 if j % 2 else 1
        if g1 <= limit:
            out[g1] = s
        if g2 <= limit:
            out[g2] = s
        j += 1
    return out


def delta(horizon: float = 400.0) -> tuple[qseries.QSeries, TransformLaw]:
    """The discriminant cusp form, weight 12, level 1, trivial multiplier.

    Expanded as e(tau) prod (1 - e(m tau))^24 using the sparse pentagonal
    form of the Euler product; this route is independent of eta_product.
    """
    limit = math.floor(horizon / 2) - 1
    euler = _euler_pentagonal(limit)
    prod = qseries._poly_power(euler, 24, limit)
    coeffs = [0] + prod  # the leading e(tau)
    f = qseries.series_from_classical(coeffs, growth=(1.0, 7.0), horizon=horizon)
    law = TransformLaw(Fraction(12), 1, arith.trivial_multiplier(1))
    return f, law


def eisenstein6(horizon: float = 400.0) -> tuple[qseries.QSeries, TransformLaw]:
    """E6 = 1 - 504 sum sigma_5(m) e(m tau): weight 6, level 1, trivial."""
    limit = math.floor(horizon / 2)
    coeffs = [1] + [-504 * arith.divisor_sigma(5, m) for m in range(1, limit + 1)]
    f = qseries.series_from_classical(coeffs, growth=(504.0, 6.0), horizon=horizon)
    law = TransformLaw(Fraction(6), 1, arith.trivial_multiplier(1))
    return f, law


def eta_product_form(
    exponents: dict[int, int], level: int | None = None, horizon: float = 400.0
) -> tuple[qseries.QSeries, TransformLaw]:
    """An eta product with its law; level defaults to the largest period."""
    f = qseries.eta_product(exponents, horizon)
    N = level if level is not None else max(exponents)
    weight = Fraction(sum(exponents.values()), 2)
    law = TransformLaw(
        weight, N, arith.eta_multiplier(), eta_exponents=tuple(sorted(exponents.items()))
    )
    return f, law


def _dirichlet_l(N: int, w: int, tol: float = 1e-12) -> float:
    """Partial sum of L(chi, w) for the Legendre character mod N.

    The tail past M is bounded by M^{1-w}/(w-1), pushed below tol.
    """
    M = max(10, math.ceil((tol * (w - 1)) ** (1.0 / (1 - w))))
    return sum(arith.kronecker_symbol(m, N) * m ** (-w) for m in range(1, M + 1))


def fricke_eisenstein(
    N: int, half_k: int, sign: int, horizon: float = 400.0
) -> tuple[qseries.QSeries, TransformLaw]:
    """Eisenstein series for the extended level-N group, N an odd prime.

    half_k is the integral weight w >= 3; sign in {+1, -1} picks the
    extension of the Legendre character chi to the Fricke involution.
    Coefficients are 1 at m = 0 and, for m >= 1,

        A^{-1} sum_{d | m} (chi(d) + sign N^{(w-1)/2} chi(m/d)) d^{w-1}

    with A = (-1)^{floor(w/2)} N^{w - 1/2} (w-1)! / (2 pi)^w * L(chi, w).
    The character value on the Fricke involution is
    chi(W_N) = sign * (-i)^w (-1)^{floor(w/2)}, the choice under which
    the transformation law verifies numerically.
    """
    w = half_k
    if w < 3:
        raise ValueError("fricke_eisenstein needs weight >= 3")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if not arith._is_prime(N) or N % 2 == 0:
        raise ValueError("level must be an odd prime")
    chi_minus1 = arith.kronecker_symbol(-1, N)
    if chi_minus1 != (-1) ** w:
        raise ValueError("parity condition chi(-1) = (-1)^w fails")
    L = _dirichlet_l(N, w)
    A = (
        (-1) ** (w // 2)
        * N ** (w - 0.5)
        * math.factorial(w - 1)
        / (2 * math.pi) ** w
        * L
    )
    limit = math.floor(horizon / 2)
    root = N ** ((w - 1) / 2.0)

    def chi(n: int) -> int:
        return arith.kronecker_symbol(n, N)

    coeffs: list = [1]
    for m in range(1, limit + 1):
        inner = sum(
            (chi(d) + sign * root * chi(m // d)) * d ** (w - 1)
            for d in range(1, m + 1)
            if m % d == 0
        )
        coeffs.append(inner / A)
    growth = ((1.0 + root) / abs(A), float(w))
    f = qseries.series_from_classical(coeffs, growth=growth, horizon=horizon)
    chi_w = sign * (-1j) ** w * (-1) ** (w // 2)
    law = TransformLaw(Fraction(w), N, arith.dirichlet_extension(N, chi_w))
    return f, law


def get_form(name: str, horizon: float = 400.0) -> tuple[qseries.QSeries, TransformLaw]:
    """Form registry: theta^k, delta, E6, etaprod:{d:r,...}, frickeE:N=..,k2=..,sign=.."""
    if name.startswith("theta^"):
        return theta_pow(int(name[6:]), horizon)
    if name == "delta":
        return delta(horizon)
    if name == "E6":
        return eisenstein6(horizon)
    if name.startswith("etaprod:"):
        body = name[len("etaprod:"):].strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise ValueError("etaprod syntax: etaprod:{d:r,...}")
        exps = {}
        for part in body[1:-1].split(","):
            if not part.strip():
                continue
            d, r = part.split(":")
            exps[int(d)] = int(r)
        return eta_product_form(exps, horizon=horizon)
    if name.startswith("frickeE:"):
        params = dict(p.split("=") for p in name[len("frickeE:"):].split(","))
        sign = {"+": 1, "-": -1, "+1": 1, "-1": -1}[params.get("sign", "+")]
        return fricke_eisenstein(int(params["N"]), int(params["k2"]), sign, horizon)
    raise KeyError("unknown form: %r" % (name,))

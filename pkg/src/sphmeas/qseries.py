"""Truncated Fourier expansions with exact surd-scaled exponents.

A QSeries represents a finite truncation of f(tau) = sum c_m e(lambda_m
tau / 2) where e(y) = exp(2 pi i y) and every exponent has the shape
lambda = q * sqrt(surd) with q a nonnegative rational and surd a shared
squarefree positive integer.  Classical expansions sum c_m e(m tau) and
are stored with lambda_m = 2m.

Each series carries a growth certificate (C, p) asserting
|c_m| <= C (1 + lambda_m)^p, which is what turns truncated evaluation
into evaluation with a rigorous tail bound.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Coefficient = complex | float | int | Fraction


class TruncationError(Exception):
    """Raised when a certified tail bound cannot be pushed below tolerance."""

    def __init__(self, message: str, achieved_bound: float):
        super().__init__(message)
        self.achieved_bound = achieved_bound


def _squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True, order=True)
class Exponent:
    """A nonnegative real number of the form q * sqrt(surd)."""

    q: Fraction
    surd: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q", Fraction(self.q))
        if self.q < 0:
            raise ValueError("exponents must be nonnegative")
        if not _squarefree(self.surd):
            raise ValueError("surd must be a squarefree positive integer")

    def value(self) -> float:
        return float(self.q) * math.sqrt(self.surd)

    def sqrt_value(self) -> float:
        return math.sqrt(self.value())


@dataclass(frozen=True)
class QSeries:
    """Finite list of (Exponent, coefficient) terms with shared surd."""

    terms: tuple
    surd: int = 1
    growth: tuple = (1.0, 0.0)
    horizon: float = 400.0
    gap: float = field(default=0.0)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        C, p = self.growth
        if C <= 0 or p < 0:
            raise ValueError("growth certificate needs C > 0, p >= 0")
        prev = None
        min_gap = math.inf
        for ex, c in self.terms:
            if ex.surd != self.surd:
                raise ValueError("all exponents must share the series surd")
            lam = ex.value()
            if prev is not None:
                if ex.q <= prev.q:
                    raise ValueError("exponents must be strictly increasing")
                min_gap = min(min_gap, lam - prev.value())
            if abs(complex(c)) > C * (1.0 + lam) ** p * (1 + 1e-15):
                raise ValueError(
                    "coefficient at lambda=%s violates the growth certificate" % lam
                )
            prev = ex
        if self.gap <= 0:
            declared = min_gap if min_gap < math.inf else 1.0
            object.__setattr__(self, "gap", declared)

    def coefficient(self, ex: Exponent) -> Coefficient:
        for e, c in self.terms:
            if e == ex:
                return c
        return 0

    def coefficient_at(self, q, surd: int | None = None) -> Coefficient:
        return self.coefficient(Exponent(Fraction(q), surd if surd else self.surd))


def series_from_classical(
    coeffs: Sequence[Coefficient],
    growth: tuple,
    horizon: float | None = None,
) -> QSeries:
    """Build a QSeries from classical coefficients c_m of sum c_m e(m tau)."""
    terms = [
        (Exponent(Fraction(2 * m)), c) for m, c in enumerate(coeffs) if c != 0
    ]
    h = horizon if horizon is not None else 2.0 * (len(coeffs) - 1)
    return QSeries(tuple(terms), surd=1, growth=growth, horizon=h, gap=2.0)


def tail_bound(f: QSeries, t: float) -> float:
    """Certified bound on the omitted tail of f at Im(tau) = t.

    Requires the horizon H to satisfy H >= 2p/(pi t) so that the summand
    envelope is decreasing past H; returns infinity otherwise.
    """
    C, p = f.growth
    H = f.horizon
    if H < 2.0 * p / (math.pi * t):
        return math.inf
    g = f.gap
    denom = 1.0 - math.exp(-math.pi * g * t / 2.0)
    return C * (1.0 + H) ** p * math.exp(-math.pi * H * t / 2.0) / denom


def evaluate(f: QSeries, tau: complex, tol: float = 1e-12) -> tuple[complex, float]:
    """Partial sum of f at tau plus a certified bound on the omitted tail."""
    if tau.imag <= 0:
        raise ValueError("evaluation needs Im(tau) > 0")
    bound = tail_bound(f, tau.imag)
    if not bound < tol:
        raise TruncationError(
            "tail bound %.3g at Im(tau)=%.3g exceeds tolerance %.3g"
            % (bound, tau.imag, tol),
            bound,
        )
    total = 0j
    for ex, c in f.terms:
        total += complex(c) * cmath.exp(1j * math.pi * ex.value() * tau)
    return total, bound


def multiply(f: QSeries, g: QSeries, horizon: float | None = None) -> QSeries:
    """Cauchy product of two series truncated at the given exponent horizon."""
    if f.surd != g.surd:
        raise ValueError("cannot multiply series with different surds")
    h = min(f.horizon, g.horizon) if horizon is None else horizon
    acc: dict[Fraction, Coefficient] = {}
    sq = math.sqrt(f.surd)
    for ef, cf in f.terms:
        for eg, cg in g.terms:
            q = ef.q + eg.q
            if float(q) * sq > h:
                break
            acc[q] = acc.get(q, 0) + cf * cg
    Cf, pf = f.growth
    Cg, pg = g.growth
    count_bound = min(len(f.terms), len(g.terms))
    growth = (Cf * Cg * max(count_bound, 1), pf + pg + 1)
    terms = tuple(
        (Exponent(q, f.surd), c) for q, c in sorted(acc.items()) if c != 0
    )
    return QSeries(terms, surd=f.surd, growth=growth, horizon=h)


def power(f: QSeries, n: int, horizon: float | None = None) -> QSeries:
    if n < 1:
        raise ValueError("power needs n >= 1")
    out = f
    for _ in range(n - 1):
        out = multiply(out, f, horizon)
    return out


def rescale_argument(f: QSeries, num: Fraction, surd_div: int = 1) -> QSeries:
    """Series of tau -> f(num * tau / sqrt(surd_div)), exponents exact.

    Splitting out the gcd of the two surds keeps the result squarefree,
    so every rescaling is representable.
    """
    num = Fraction(num)
    if num <= 0:
        raise ValueError("rescale factor must be positive")
    if not _squarefree(surd_div):
        raise ValueError("surd_div must be squarefree")
    h = math.gcd(f.surd, surd_div)
    s1 = f.surd // h
    s2 = surd_div // h
    new_surd = s1 * s2
    # lambda * num / sqrt(surd_div) = (q num / s2) sqrt(s1 s2)
    ratio = float(num) / math.sqrt(surd_div)
    C, p = f.growth
    growth = (C * max(ratio, 1.0) ** p, p)
    terms = tuple(
        (Exponent(ex.q * num / s2, new_surd), c) for ex, c in f.terms
    )
    return QSeries(
        terms,
        surd=new_surd,
        growth=growth,
        horizon=f.horizon * ratio,
        gap=f.gap * ratio,
    )


def _poly_multiply(a: list, b_sparse: Iterable[tuple[int, int]], limit: int) -> list:
    out = [0] * (limit + 1)
    for j, bj in b_sparse:
        if bj == 0:
            continue
        for i, ai in enumerate(a):
            if ai and i + j <= limit:
                out[i + j] += ai * bj
    return out


def _euler_factor(d: int, limit: int) -> list:
    """Coefficients of prod_{m>=1} (1 - x^{d m}) up to x^limit."""
    out = [0] * (limit + 1)
    out[0] = 1
    m = d
    while m <= limit:
        out = _poly_multiply(out, [(0, 1), (m, -1)], limit)
        m += d
    return out


def _poly_inverse(a: list, limit: int) -> list:
    if a[0] == 0:
        raise ValueError("cannot invert a series with zero constant term")
    if a[0] not in (1, -1):
        raise ValueError("inversion implemented for unit constant term only")
    inv = [0] * (limit + 1)
    inv[0] = a[0]
    for n in range(1, limit + 1):
        s = 0
        for i in range(1, min(n, len(a) - 1) + 1):
            s += a[i] * inv[n - i]
        inv[n] = -a[0] * s
    return inv


def _poly_power(a: list, n: int, limit: int) -> list:
    out = [0] * (limit + 1)
    out[0] = 1
    base = a[:]
    e = n
    while e:
        if e & 1:
            out = _dense_multiply(out, base, limit)
        e >>= 1
        if e:
            base = _dense_multiply(base, base, limit)
    return out


def _dense_multiply(a: list, b: list, limit: int) -> list:
    out = [0] * (limit + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        top = limit - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def eta_product(exponents: dict[int, int], horizon: float = 400.0) -> QSeries:
    """Expansion of prod_d eta(d tau)^{r_d} as a QSeries.

    eta(tau) = e(tau/24) prod_{m>=1} (1 - e(m tau)).  The computation is
    exact integer power-series manipulation on the e(tau) grid; the
    fractional leading exponent sum(d r_d)/24 is carried separately.

    The growth certificate is empirical: p is fixed from the total number
    of eta factors and C is the smallest constant covering all computed
    coefficients, so the certificate holds for every stored term.
    """
    exponents = {d: r for d, r in exponents.items() if r != 0}
    lead = Fraction(sum(d * r for d, r in exponents.items()), 24)
    # classical exponent limit: lambda = 2 (n + lead) <= horizon
    limit = math.floor(horizon / 2 - lead)
    if limit < 0:
        raise ValueError("horizon too small to contain the leading exponent")
    if not exponents:
        return QSeries(
            ((Exponent(Fraction(0)), 1),), surd=1, growth=(1.0, 0.0), horizon=horizon
        )
    prod = [0] * (limit + 1)
    prod[0] = 1
    for d, r in sorted(exponents.items()):
        base = _euler_factor(d, limit)
        part = _poly_power(base, abs(r), limit)
        if r < 0:
            part = _poly_inverse(part, limit)
        prod = _dense_multiply(prod, part, limit)
    K = sum(abs(r) for r in exponents.values())
    p = K / 2.0 + 2.0
    C = 1.0
    for n, c in enumerate(prod):
        if c:
            lam = 2.0 * (n + float(lead))
            C = max(C, abs(c) / (1.0 + lam) ** p)
    terms = tuple(
        (Exponent(2 * (n + lead)), c) for n, c in enumerate(prod) if c != 0
    )
    return QSeries(terms, surd=1, growth=(C, p), horizon=horizon, gap=2.0)


def to_csv(f: QSeries, path: str) -> None:
    """Write (exponent_numerator, exponent_denominator, surd, re, im) rows."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["exponent_num", "exponent_den", "surd", "coeff_re", "coeff_im"])
        for ex, c in f.terms:
            z = complex(c)
            if isinstance(c, (int, Fraction)):
                w.writerow([ex.q.numerator, ex.q.denominator, ex.surd, str(Fraction(c)), "0"])
            else:
                w.writerow([ex.q.numerator, ex.q.denominator, ex.surd, repr(z.real), repr(z.imag)])


def write_csv_rows(f: QSeries) -> list[list[str]]:
    rows = []
    for ex, c in f.terms:
        z = complex(c)
        rows.append(
            [str(ex.q.numerator), str(ex.q.denominator), str(ex.surd), repr(z.real), repr(z.imag)]
        )
    return rows

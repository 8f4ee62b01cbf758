"""Real quadratic field arithmetic and two-variable theta demos.

Supports the class-number-one fields Q(sqrt(D)) for D in {5, 13, 17}
(D = 1 mod 4, ring of integers Z[(1+sqrt(D))/2]).  Provides exact
quadratic irrational arithmetic, enumeration of totally positive
elements of the inverse different, ideal divisor sums via prime
splitting, the weight-(k,k) Eisenstein series with a fitted constant
term, and the rotated-lattice theta function attached to a root of
X^2 + A X - 1.

Two-variable expansions use exponents that are exact elements of the
field (a rational plus a rational multiple of sqrt(d)), which is more
general than the single-surd exponents of the one-variable series type;
they get their own lightweight container here.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

SUPPORTED_D = (5, 13, 17)

# fundamental units (all of norm -1 for the supported fields)
_FUNDAMENTAL_UNIT = {
    5: (Fraction(1, 2), Fraction(1, 2)),
    13: (Fraction(3, 2), Fraction(1, 2)),
    17: (Fraction(4), Fraction(1)),
}


@dataclass(frozen=True)
class Quad:
    """u + v sqrt(d) with exact rational u, v and squarefree d > 1."""

    u: Fraction
    v: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "u", Fraction(self.u))
        object.__setattr__(self, "v", Fraction(self.v))

    def __add__(self, o):
        o = self._coerce(o)
        return Quad(self.u + o.u, self.v + o.v, self.d)

    def __sub__(self, o):
        o = self._coerce(o)
        return Quad(self.u - o.u, self.v - o.v, self.d)

    def __mul__(self, o):
        o = self._coerce(o)
        return Quad(
            self.u * o.u + self.d * self.v * o.v,
            self.u * o.v + self.v * o.u,
            self.d,
        )

    def __neg__(self):
        return Quad(-self.u, -self.v, self.d)

    def _coerce(self, o):
        if isinstance(o, Quad):
            if o.d != self.d:
                raise ValueError("mixed surds")
            return o
        return Quad(Fraction(o), Fraction(0), self.d)

    def conj(self) -> "Quad":
        return Quad(self.u, -self.v, self.d)

    def norm(self) -> Fraction:
        return self.u * self.u - self.d * self.v * self.v

    def trace(self) -> Fraction:
        return 2 * self.u

    def divide(self, o: "Quad") -> "Quad":
        o = self._coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero element")
        num = self * o.conj()
        return Quad(num.u / n, num.v / n, self.d)

    def embed(self, sign: int = 1) -> float:
        return float(self.u) + sign * float(self.v) * math.sqrt(self.d)

    def is_integral(self) -> bool:
        """Membership in Z[(1+sqrt(d))/2] for d = 1 mod 4."""
        h = 2 * self.v
        g = self.u - self.v
        return h.denominator == 1 and g.denominator == 1


@dataclass(frozen=True)
class QuadField:
    """Q(sqrt(D)) for a supported squarefree D = 1 mod 4."""

    D: int

    def __post_init__(self):
        if self.D not in SUPPORTED_D:
            raise ValueError("supported discriminants: %s" % (SUPPORTED_D,))

    def element(self, u, v) -> Quad:
        return Quad(Fraction(u), Fraction(v), self.D)

    def omega(self) -> Quad:
        return Quad(Fraction(1, 2), Fraction(1, 2), self.D)

    def sqrt_d(self) -> Quad:
        return Quad(Fraction(0), Fraction(1), self.D)

    def unit(self) -> Quad:
        u, v = _FUNDAMENTAL_UNIT[self.D]
        return Quad(u, v, self.D)


def enumerate_totally_positive(F: QuadField, trace_bound) -> list[Quad]:
    """Totally positive elements of the inverse different, trace-sorted.

    Elements of (1/sqrt(D)) O_F are (x + y omega)/sqrt(D) with integer
    x, y; such an element has trace y and is totally positive exactly
    when |x + y/2| < (y/2) sqrt(D).
    """
    bound = Fraction(trace_bound)
    if bound <= 0:
        return []
    D = F.D
    sq = math.sqrt(D)
    out = []
    for y in range(1, math.floor(bound) + 1):
        half = y / 2.0
        lo = math.floor(-half - half * sq) + 1
        hi = math.ceil(-half + half * sq) - 1
        for x in range(lo, hi + 1):
            if abs(x + half) < half * sq:
                # m = (x + y omega) / sqrt(D) = y/2 + ((x + y/2)/D) sqrt(D)
                m = Quad(Fraction(y, 2), Fraction(2 * x + y, 2 * D), D)
                if m.embed(1) > 0 and m.embed(-1) > 0:
                    out.append(m)
    out.sort(key=lambda m: (m.trace(), m.v))
    return out


def _find_prime_element(F: QuadField, p: int) -> Quad:
    """A generator of a prime ideal above p (norm +-p), by box search."""
    if p == F.D:
        return F.sqrt_d()
    eps = F.unit().embed(1)
    b1 = math.ceil(math.sqrt(p * eps)) + 1
    b2 = math.ceil(2 * math.sqrt(p * eps) / math.sqrt(F.D)) + 1
    for h in range(-b2, b2 + 1):
        for g in range(-b1, b1 + 1):
            z = Quad(Fraction(2 * g + h, 2), Fraction(h, 2), F.D)
            if abs(z.norm()) == p:
                return z
    raise ArithmeticError("no prime element of norm %d found" % p)


def _valuation(z: Quad, pi: Quad) -> tuple[int, Quad]:
    """Largest e with pi^e | z, together with the cofactor."""
    e = 0
    while True:
        q = z.divide(pi)
        if not q.is_integral():
            return e, z
        z = q
        e += 1


def _factor_int(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _splitting(F: QuadField, p: int) -> str:
    if F.D % p == 0:
        return "ramified"
    if p == 2:
        return "split" if F.D % 8 == 1 else "inert"
    from .arith import kronecker_symbol

    return "split" if kronecker_symbol(F.D, p) == 1 else "inert"


def ideal_sigma(s: int, F: QuadField, m: Quad) -> int:
    """Sum of N(n)^s over the ideal divisors n of the different times m.

    The product sqrt(D) * m must be integral.  With class number one the
    divisor lattice factors over prime elements: split primes contribute
    two independent exponents, inert primes count in norm p^2 steps, and
    the ramified prime counts the sqrt(D)-adic valuation.
    """
    if s < 1:
        raise ValueError("ideal_sigma needs s >= 1")
    z = m * F.sqrt_d()
    if not z.is_integral():
        raise ValueError("the element does not lie in the inverse different")
    n = abs(int(z.norm()))
    if n == 0:
        raise ValueError("zero element")
    total = 1
    for p in sorted(_factor_int(n)):
        kind = _splitting(F, p)
        if kind == "inert":
            e, z = _valuation(z, Quad(Fraction(p), Fraction(0), F.D))
            total *= sum(p ** (2 * s * i) for i in range(e + 1))
        elif kind == "ramified":
            pi = _find_prime_element(F, p)
            e, z = _valuation(z, pi)
            total *= sum(p ** (s * i) for i in range(e + 1))
        else:
            pi = _find_prime_element(F, p)
            a, z = _valuation(z, pi)
            b, z = _valuation(z, pi.conj())
            total *= sum(p ** (s * i) for i in range(a + 1))
            total *= sum(p ** (s * j) for j in range(b + 1))
    return total


@dataclass(frozen=True)
class TwoVarSeries:
    """Finite sum of c * e(lam1 tau1 / 2 + lam2 tau2 / 2) terms.

    Exponent pairs are exact Quad field elements with lam2 the conjugate
    of lam1; coefficients may be exact or floating.  The truncation is
    by a declared trace bound on (lam1 + lam2)/2.
    """

    terms: tuple
    trace_bound: float

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def evaluate(self, tau1: complex, tau2: complex) -> complex:
        if tau1.imag <= 0 or tau2.imag <= 0:
            raise ValueError("evaluation needs Im(tau) > 0")
        total = 0j
        for lam1, lam2, c in self.terms:
            x1 = lam1.embed(1) if isinstance(lam1, Quad) else float(lam1)
            x2 = lam2.embed(1) if isinstance(lam2, Quad) else float(lam2)
            total += complex(c) * cmath.exp(1j * math.pi * (x1 * tau1 + x2 * tau2))
        return total

    def swapped(self) -> "TwoVarSeries":
        terms = tuple((l2, l1, c) for l1, l2, c in self.terms)
        return TwoVarSeries(
            tuple(sorted(terms, key=_term_key)), self.trace_bound
        )


def _term_key(term):
    lam1, lam2, _ = term
    def key(l):
        if isinstance(l, Quad):
            return (l.u + l.v, l.u, l.v)
        return (Fraction(l), Fraction(l), Fraction(0))
    return key(lam1) + key(lam2)


def hilbert_eisenstein(
    F: QuadField, k: int, trace_bound
) -> tuple[TwoVarSeries, float]:
    """Weight-(k, k) Eisenstein expansion with a fitted constant term.

    The non-constant part is 4 (-1)^k sum sigma_{k-1}(d m) e(tr(m tau))
    over totally positive m in the inverse different with trace up to
    trace_bound.  The constant term is not read off a zeta table: it is
    fitted by enforcing the weight-(k, k) transformation at the point
    (2i, 2i) and cross-checked elsewhere by the caller.
    """
    if k < 2 or k % 2 != 0:
        raise ValueError("hilbert_eisenstein needs even k >= 2")
    B = 4 * (-1) ** k
    terms = []
    for m in enumerate_totally_positive(F, trace_bound):
        sig = ideal_sigma(k - 1, F, m)
        lam1 = m + m  # 2m, so that e(lam tau / 2) = e(m tau)
        terms.append((lam1, lam1.conj(), B * sig))
    terms.sort(key=_term_key)
    series = TwoVarSeries(tuple(terms), float(trace_bound))
    fitted = fit_constant_term(series, k, 2j)
    full = TwoVarSeries(
        ((Quad(0, 0, F.D), Quad(0, 0, F.D), fitted),) + series.terms,
        float(trace_bound),
    )
    return full, fitted


def fit_constant_term(series: TwoVarSeries, k: int, t: complex) -> float:
    """Constant c with c + S satisfying the diagonal weight-(k,k) law at t."""
    factor = (t * t) ** k
    s_here = series.evaluate(t, t)
    s_flip = series.evaluate(-1 / t, -1 / t)
    c = (s_flip - factor * s_here) / (factor - 1)
    return c.real if abs(c.imag) < 1e-9 * (1 + abs(c)) else complex(c)


def transformation_residuals(series: TwoVarSeries, k: int, grid) -> list[float]:
    """|F(-1/tau1, -1/tau2) - (tau1 tau2)^k F(tau1, tau2)| over a grid."""
    out = []
    for t1, t2 in grid:
        lhs = series.evaluate(-1 / t1, -1 / t2)
        rhs = (t1 * t2) ** k * series.evaluate(t1, t2)
        out.append(abs(lhs - rhs))
    return out


def _squarefree_split(n: int) -> tuple[int, int]:
    """n = f^2 * d with d squarefree; returns (f, d)."""
    f = 1
    d = n
    i = 2
    while i * i <= d:
        while d % (i * i) == 0:
            d //= i * i
            f *= i
        i += 1
    return f, d


def rotated_lattice_theta(A: int, radius: int = 40):
    """Theta series of the rotated integer lattice attached to A.

    lam, lam' are the roots of X^2 + A X - 1; the lattice vector (a, b)
    maps to the point (K (a + b lam), K' (a + b lam')) with
    K^2 = -lam' / (lam - lam'), K'^2 = lam / (lam - lam'), a rotation of
    Z^2 (the squared coordinates sum to a^2 + b^2 exactly).  Returns the
    two-variable theta series truncated at |a|, |b| <= radius together
    with the weight vector data (dims (1, 1), unit weights).
    """
    if A < 1:
        raise ValueError("A must be a positive integer")
    f, d = _squarefree_split(A * A + 4)
    if d == 1:
        raise ValueError("A^2 + 4 must not be a perfect square")
    disc = Quad(Fraction(0), Fraction(f), d)
    lam = (disc - A) * Quad(Fraction(1, 2), Fraction(0), d)
    lam_conj = lam.conj()
    k2 = (-lam_conj).divide(disc)
    k2_conj = k2.conj()
    acc: dict = {}
    for a in range(-radius, radius + 1):
        for b in range(-radius, radius + 1):
            x = lam * b + a
            l1 = k2 * x * x
            key = (l1.u, l1.v)
            acc[key] = acc.get(key, 0) + 1
    terms = []
    for (u, v), c in acc.items():
        l1 = Quad(u, v, d)
        terms.append((l1, l1.conj(), c))
    terms.sort(key=_term_key)
    series = TwoVarSeries(tuple(terms), 2.0 * radius)
    dims = (1, 1)
    return series, dims


def rotated_lattice_residuals(A: int, grid, radius: int = 40) -> list[float]:
    """|theta(-1/t1, -1/t2) - sqrt(-i t1) sqrt(-i t2) theta(t1, t2)| on a grid."""
    series, _ = rotated_lattice_theta(A, radius)
    out = []
    for t1, t2 in grid:
        lhs = series.evaluate(-1 / t1, -1 / t2)
        rhs = (
            cmath.sqrt(-1j * t1)
            * cmath.sqrt(-1j * t2)
            * series.evaluate(t1, t2)
        )
        out.append(abs(lhs - rhs))
    return out
